#include "capq/cache.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace capq {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "capq-rewrite-cache-v1";

std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) os << ((h >> shift) & 0xf);
  return os.str();
}

json word_to_json(const Word& w) {
  json arr = json::array();
  for (int i = 0; i < w.size(); ++i) {
    GenId g = w.at(i);
    arr.push_back(static_cast<int>(g.kind));
    arr.push_back(g.row);
    arr.push_back(g.col);
  }
  return arr;
}

Word word_from_json(const json& arr) {
  if (!arr.is_array() || arr.size() % 3 != 0)
    throw ParseError("cache: malformed word");
  Word w;
  for (size_t i = 0; i < arr.size(); i += 3) {
    int kind = arr[i].get<int>();
    int row = arr[i + 1].get<int>();
    int col = arr[i + 2].get<int>();
    if (kind < 0 || kind > 4 || row < 1 || row > 4 || col < 1 || col > 4)
      throw ParseError("cache: letter out of range");
    w = w.concat(Word::single(GenId{static_cast<GenKind>(kind), row, col}));
  }
  return w;
}

json rules_to_json(const RewriteSystem& S) {
  json rules = json::array();
  for (const RewriteRule& r : S.rules) {
    json tail = json::array();
    for (const auto& [word, coeff] : r.tail.terms())
      tail.push_back(json::array({word_to_json(word), coeff.str()}));
    rules.push_back(json{{"head", word_to_json(r.head)}, {"tail", tail}});
  }
  return rules;
}

std::vector<RewriteRule> rules_from_json(const json& rules, const QField& f) {
  std::vector<RewriteRule> out;
  for (const json& jr : rules) {
    RewriteRule r;
    r.head = word_from_json(jr.at("head"));
    std::vector<NCPoly::Term> terms;
    for (const json& jt : jr.at("tail"))
      terms.push_back({word_from_json(jt.at(0)), f.parse(jt.at(1).get<std::string>())});
    r.tail = NCPoly::from_terms(std::move(terms));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::string system_cache_key(const std::vector<NCPoly>& relations,
                             const MonomialOrder& order, int bound,
                             const QField& f) {
  std::ostringstream os;
  os << order.tag() << "|" << bound << "|" << f.describe() << "\n";
  for (const NCPoly& r : relations) os << r.str() << "\n";
  return fnv1a_hex(os.str());
}

std::string system_cache_path(const std::string& cache_dir,
                              const std::string& key) {
  return (std::filesystem::path(cache_dir) / (key + ".json")).string();
}

void save_system(const RewriteSystem& S, const std::string& key,
                 const std::string& path) {
  json rules = rules_to_json(S);
  json doc{{"format", kFormat},
           {"key", key},
           {"order", S.order.tag()},
           {"bound", S.degree_bound},
           {"mode", S.mode == QMode::symbolic ? "symbolic" : "specialized"},
           {"confluent", S.confluent},
           {"rules_hash", fnv1a_hex(rules.dump())},
           {"rules", std::move(rules)}};

  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cache: cannot write " + tmp);
    out << doc.dump(1) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

std::optional<RewriteSystem> load_system(const std::string& path,
                                         const std::string& key,
                                         const std::vector<NCPoly>& relations,
                                         const MonomialOrder& order, int bound,
                                         const QField& f) {
  std::ifstream in(path);
  if (!in) return std::nullopt;  // cold cache: silent

  auto reject = [&](const std::string& why) -> std::optional<RewriteSystem> {
    std::cerr << "capq: ignoring cache file " << path << " (" << why
              << "); recomputing\n";
    return std::nullopt;
  };

  json doc;
  try {
    in >> doc;
  } catch (const json::exception&) {
    return reject("unparseable");
  }

  try {
    if (doc.at("format").get<std::string>() != kFormat)
      return reject("unknown format");
    if (doc.at("key").get<std::string>() != key ||
        doc.at("order").get<std::string>() != order.tag() ||
        doc.at("bound").get<int>() != bound)
      return reject("keyed to a different request");
    std::string mode = doc.at("mode").get<std::string>();
    if (mode != (f.mode() == QMode::symbolic ? "symbolic" : "specialized"))
      return reject("keyed to a different request");
    if (doc.at("rules_hash").get<std::string>() != fnv1a_hex(doc.at("rules").dump()))
      return reject("content hash mismatch");

    RewriteSystem S;
    S.rules = rules_from_json(doc.at("rules"), f);
    S.order = order;
    S.degree_bound = bound;
    S.mode = f.mode();
    S.confluent = doc.at("confluent").get<bool>();

    for (size_t i = 1; i < S.rules.size(); ++i)
      if (!S.order.less(S.rules[i - 1].head, S.rules[i].head))
        return reject("rules out of order");

    // Revalidation: the audit must agree with the stored flag and the
    // defining relations must still be members of the rewritten ideal.
    if (confluence_defects(S).empty() != S.confluent)
      return reject("confluence audit disagrees");
    for (const NCPoly& r : relations)
      if (!normal_form(r, S).is_zero()) return reject("relation audit failed");

    return S;
  } catch (const json::exception&) {
    return reject("malformed");
  } catch (const ParseError&) {
    return reject("malformed");
  } catch (const DegreeOverflow&) {
    return reject("malformed");
  }
}

RewriteSystem complete_cached(const std::vector<NCPoly>& relations,
                              const MonomialOrder& order, int bound,
                              const QField& f, const std::string& cache_dir,
                              bool* cache_hit) {
  if (cache_hit) *cache_hit = false;
  if (cache_dir.empty()) return complete(relations, order, bound);

  std::string key = system_cache_key(relations, order, bound, f);
  std::string path = system_cache_path(cache_dir, key);
  if (auto cached = load_system(path, key, relations, order, bound, f)) {
    if (cache_hit) *cache_hit = true;
    return *cached;
  }

  RewriteSystem S = complete(relations, order, bound);
  std::error_code ec;
  std::filesystem::create_directories(cache_dir, ec);
  save_system(S, key, path);
  return S;
}

}  // namespace capq
