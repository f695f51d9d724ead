#include "capq/rmatrix.hpp"

#include <cassert>
#include <fstream>
#include <set>
#include <sstream>

namespace capq {

namespace {

// First entry where a and b differ, rendered for witness messages.
std::string first_difference(const TensorMat& a, const TensorMat& b) {
  TensorMat diff = a - b;
  assert(!diff.is_zero());
  const auto& [rc, p] = *diff.entries().begin();
  std::ostringstream os;
  auto tuple = [&](int lin) {
    std::string s;
    for (int v : unpack_index(lin, diff.N(), diff.k())) s += std::to_string(v);
    return s;
  };
  os << "entry (" << tuple(rc.first) << "," << tuple(rc.second)
     << ") differs by " << p.str();
  return os.str();
}

QScalar scalar_entry(const TensorMat& a, int r, int c, const QField& f) {
  const NCPoly& p = a.at(r, c);
  if (p.is_zero()) return f.zero();
  assert(p.degree() == 0);
  return p.terms().front().second;
}

}  // namespace

RMatrix::RMatrix(TensorMat rop, const QField& f)
    : field_(f), rop_(std::move(rop)) {
  if (rop_.k() != 2) throw ValidationError("an R-matrix must have width 2");
  if (!rop_.is_scalar())
    throw ValidationError("an R-matrix must have scalar entries");
  int N = rop_.N();
  std::ostringstream witness;

  // braid: R_1 R_2 R_1 = R_2 R_1 R_2 on width 3
  TensorMat R1 = embed(rop_, {1, 2}, 3);
  TensorMat R2 = embed(rop_, {2, 3}, 3);
  TensorMat lhs = tmul(R1, tmul(R2, R1));
  TensorMat rhs = tmul(R2, tmul(R1, R2));
  braid_ok_ = (lhs == rhs);
  if (!braid_ok_)
    witness << "braid R1R2R1 = R2R1R2 fails: " << first_difference(lhs, rhs)
            << "; ";

  // Hecke: R^2 = 1 + (q - q^{-1}) R
  QScalar d = field_.q(1) - field_.q(-1);
  TensorMat r2 = tmul(rop_, rop_);
  TensorMat hecke_rhs = TensorMat::identity(N, 2, field_) + rop_.scaled(d);
  hecke_ok_ = (r2 == hecke_rhs);
  if (!hecke_ok_)
    witness << "Hecke R^2 = 1 + (q-q^{-1})R fails: "
            << first_difference(r2, hecke_rhs) << "; ";

  if (hecke_ok_) {
    rinv_ = rop_ - TensorMat::identity(N, 2, field_).scaled(d);
    assert(tmul(rop_, rinv_) == TensorMat::identity(N, 2, field_));
  }

  // Skew inverse: solve Tr_(2)(R_12 Psi_23) = P_13. With
  // M[(a,a'),(v,b)] = R((a,b),(a',v)) the equation reads
  //   Σ_{v,b} M[(a,a'),(v,b)] · Psi((v,c),(b,c')) = δ_{a,c'} δ_{c,a'},
  // one shared coefficient matrix for all (c,c'), so
  // Psi((v,c),(b,c')) = M^{-1}[(v,b),(c',c)].
  TensorMat M(N, 2);
  for (int a = 1; a <= N; ++a)
    for (int ap = 1; ap <= N; ++ap)
      for (int v = 1; v <= N; ++v)
        for (int b = 1; b <= N; ++b) {
          const NCPoly& e = rop_.at(pack_index({a, b}, N), pack_index({ap, v}, N));
          if (!e.is_zero())
            M.set(pack_index({a, ap}, N), pack_index({v, b}, N), e);
        }
  bool solved = false;
  TensorMat Minv;
  try {
    Minv = scalar_inverse(M, field_);
    solved = true;
  } catch (const ValidationError&) {
    witness << "skew-inverse system is singular; ";
  }
  if (solved) {
    TensorMat psi(N, 2);
    for (int v = 1; v <= N; ++v)
      for (int c = 1; c <= N; ++c)
        for (int b = 1; b <= N; ++b)
          for (int cp = 1; cp <= N; ++cp) {
            const NCPoly& e =
                Minv.at(pack_index({v, b}, N), pack_index({cp, c}, N));
            if (!e.is_zero())
              psi.set(pack_index({v, c}, N), pack_index({b, cp}, N), e);
          }

    // After tracing out slot 2, the remaining slots 1 and 3 relabel to a
    // width-2 space; P_13 becomes the swap there.
    TensorMat P13 = perm_matrix(1, 2, 2, N, field_);
    TensorMat eq1 =
        trace_slots(tmul(embed(rop_, {1, 2}, 3), embed(psi, {2, 3}, 3)), {2});
    assert(eq1 == P13);  // holds by construction of the solve
    TensorMat eq2 =
        trace_slots(tmul(embed(psi, {1, 2}, 3), embed(rop_, {2, 3}, 3)), {2});
    if (eq2 == P13) {
      skew_ok_ = true;
      skew_.psi = psi;
      skew_.c = trace_slots(psi, {2});
    } else {
      witness << "second skew identity Tr_(2)(Psi_12 R_23) = P_13 fails: "
              << first_difference(eq2, P13) << "; ";
    }
  }

  witness_ = witness.str();
  if (!witness_.empty()) witness_.resize(witness_.size() - 2);  // trim "; "
}

RMatrix RMatrix::from_operator(TensorMat rop, const QField& f) {
  return RMatrix(std::move(rop), f);
}

const TensorMat& RMatrix::rinv() const {
  if (!hecke_ok_)
    throw ValidationError("R^{-1} requested for a non-Hecke R-matrix");
  return rinv_;
}

void RMatrix::require_valid() const {
  if (!valid())
    throw ValidationError("R-matrix validation failed: " + witness_);
}

const SkewInverse& RMatrix::skew() const {
  if (!skew_ok_)
    throw ValidationError("skew inverse requested but R is not skew-invertible");
  return skew_;
}

RMatrix dj_rmatrix(int N, const QField& f) {
  if (N < 1 || N > 4) throw ConfigError("dj_rmatrix supports N = 1..4");
  QScalar d = f.q(1) - f.q(-1);
  for (bool upper : {true, false}) {
    TensorMat rop(N, 2);
    for (int i = 1; i <= N; ++i)
      rop.set(pack_index({i, i}, N), pack_index({i, i}, N), NCPoly(f.q(1)));
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) {
        if (i == j) continue;
        rop.set(pack_index({i, j}, N), pack_index({j, i}, N), NCPoly(f.one()));
        bool in_block = upper ? (i < j) : (i > j);
        if (in_block)
          rop.set(pack_index({i, j}, N), pack_index({i, j}, N), NCPoly(d));
      }
    RMatrix r = RMatrix::from_operator(std::move(rop), f);
    if (r.valid()) return r;
  }
  throw Error("no orientation of the Drinfeld-Jimbo formula validated");
}

RMatrix load_rmatrix(const std::string& path, const QField& f) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open R-matrix file: " + path);

  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError(path + ":" + std::to_string(lineno) + ": " + what);
  };

  int N = 0;
  // header: N <N> q <scalar-string>
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream hs(line);
    std::string nlabel, qlabel, qtext;
    if (!(hs >> nlabel >> N >> qlabel) || nlabel != "N" || qlabel != "q")
      fail("expected header \"N <N> q <scalar>\"");
    std::getline(hs, qtext);
    size_t start = qtext.find_first_not_of(" \t");
    if (start == std::string::npos) fail("missing q value in header");
    qtext = qtext.substr(start);
    QScalar file_q = f.parse(qtext);  // ParseError propagates
    if (!(file_q == f.q(1)))
      throw ValidationError(path + ": header q \"" + qtext +
                            "\" does not match the session field (" +
                            f.describe() + ")");
    break;
  }
  if (N < 1 || N > 4) fail("header N out of range 1..4");

  TensorMat rop(N, 2);
  std::set<std::pair<int, int>> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream es(line);
    int i, j, k, l;
    if (!(es >> i >> j >> k >> l)) fail("expected \"i j k l <scalar>\"");
    if (i < 1 || j < 1 || k < 1 || l < 1 || i > N || j > N || k > N || l > N)
      fail("index out of range 1..N");
    std::string stext;
    std::getline(es, stext);
    size_t start = stext.find_first_not_of(" \t");
    if (start == std::string::npos) fail("missing scalar value");
    QScalar coeff = f.parse(stext.substr(start));
    // coefficient of e_ik ⊗ e_jl: operator entry ((i,j),(k,l))
    std::pair<int, int> rc{pack_index({i, j}, N), pack_index({k, l}, N)};
    if (!seen.insert(rc).second) fail("duplicate entry line");
    rop.set(rc.first, rc.second, NCPoly(coeff));
  }
  return RMatrix::from_operator(std::move(rop), f);
}

void save_rmatrix(const RMatrix& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write R-matrix file: " + path);
  const QField& f = r.field();
  out << "N " << r.N() << " q "
      << (f.mode() == QMode::symbolic ? std::string("q")
                                      : f.q(1).rational_value().get_str())
      << "\n";
  for (const auto& [rc, p] : r.rop().entries()) {
    MultiIndex row = unpack_index(rc.first, r.N(), 2);
    MultiIndex col = unpack_index(rc.second, r.N(), 2);
    out << row[0] << " " << row[1] << " " << col[0] << " " << col[1] << " "
        << scalar_entry(r.rop(), rc.first, rc.second, f).str() << "\n";
  }
}

SkewInverse skew_inverse(const RMatrix& r) { return r.skew(); }

}  // namespace capq
