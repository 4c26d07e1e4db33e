#include "pkit/json_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace pkit::io {

namespace {

void check_fields(const json& j, const std::set<std::string>& allowed,
                  const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ParseError(path + "." + it.key() + ": unknown field");
}

void check_schema(const json& j, const std::string& kind) {
  if (j.contains("schema") && j.at("schema") != "pkit/1")
    throw ParseError("schema: expected \"pkit/1\"");
  if (j.contains("kind") && j.at("kind") != kind)
    throw ParseError("kind: expected \"" + kind + "\"");
}

std::string str_at(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw ParseError(path + "." + key + ": missing");
  if (!j.at(key).is_string()) throw ParseError(path + "." + key + ": expected a string");
  return j.at(key).get<std::string>();
}

std::vector<int> brick_at(const json& j, const std::string& key,
                          const std::string& path) {
  if (!j.contains(key)) throw ParseError(path + "." + key + ": missing");
  const json& b = j.at(key);
  if (!b.is_array() || b.size() != 2)
    throw ParseError(path + "." + key + ": expected a two-element list");
  std::vector<int> out;
  for (const json& e : b) {
    if (!e.is_number_integer())
      throw ParseError(path + "." + key + ": expected integers");
    out.push_back(e.get<int>());
  }
  return out;
}

Rational coeff_at(const json& j, const std::string& path) {
  std::string s = str_at(j, "coeff", path);
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ".coeff: " + e.what());
  }
}

std::vector<std::vector<proto::RelationTerm>> parse_relations(
    const json& j, const std::string& key, int arity,
    const std::map<std::string, int>& gen_index) {
  std::vector<std::vector<proto::RelationTerm>> out;
  if (!j.contains(key)) return out;
  const json& arr = j.at(key);
  if (!arr.is_array()) throw ParseError(key + ": expected a list");
  for (size_t ri = 0; ri < arr.size(); ++ri) {
    std::string rpath = key + "[" + std::to_string(ri) + "]";
    check_fields(arr[ri], {"terms"}, rpath);
    if (!arr[ri].contains("terms") || !arr[ri].at("terms").is_array())
      throw ParseError(rpath + ".terms: expected a list");
    std::vector<proto::RelationTerm> terms;
    const json& jterms = arr[ri].at("terms");
    for (size_t ti = 0; ti < jterms.size(); ++ti) {
      std::string tpath = rpath + ".terms[" + std::to_string(ti) + "]";
      const json& jt = jterms[ti];
      check_fields(jt, {"bottom_brick", "top_brick", "bottom_gen", "top_gen", "coeff"},
                   tpath);
      proto::RelationTerm t;
      t.bottom_brick = brick_at(jt, "bottom_brick", tpath);
      t.top_brick = brick_at(jt, "top_brick", tpath);
      for (const std::vector<int>* b : {&t.bottom_brick, &t.top_brick})
        for (int e : *b)
          if (e < 1 || e > arity)
            throw ParseError(tpath + ": brick element out of range for arity " +
                             std::to_string(arity));
      auto bg = gen_index.find(str_at(jt, "bottom_gen", tpath));
      auto tg = gen_index.find(str_at(jt, "top_gen", tpath));
      if (bg == gen_index.end())
        throw ParseError(tpath + ".bottom_gen: unknown generator");
      if (tg == gen_index.end())
        throw ParseError(tpath + ".top_gen: unknown generator");
      t.bottom_gen = bg->second;
      t.top_gen = tg->second;
      t.coeff = coeff_at(jt, tpath);
      terms.push_back(std::move(t));
    }
    out.push_back(std::move(terms));
  }
  return out;
}

}  // namespace

proto::BinaryQuadraticProtoperad parse_protoperad(const json& j) {
  check_fields(j, {"schema", "kind", "convention", "generators", "relations2",
                   "relations3"},
               "$");
  check_schema(j, "protoperad");
  if (!j.contains("generators") || !j.at("generators").is_array() ||
      j.at("generators").empty())
    throw ParseError("generators: expected a nonempty list");
  std::vector<proto::GeneratorSpec> gens;
  std::map<std::string, int> gen_index;
  const json& jg = j.at("generators");
  for (size_t i = 0; i < jg.size(); ++i) {
    std::string path = "generators[" + std::to_string(i) + "]";
    check_fields(jg[i], {"name", "symmetry"}, path);
    proto::GeneratorSpec g;
    g.name = str_at(jg[i], "name", path);
    std::string sym = str_at(jg[i], "symmetry", path);
    if (sym == "symmetric")
      g.symmetry = proto::Symmetry::symmetric;
    else if (sym == "antisymmetric")
      g.symmetry = proto::Symmetry::antisymmetric;
    else
      throw ParseError(path + ".symmetry: expected \"symmetric\" or \"antisymmetric\"");
    if (!gen_index.emplace(g.name, static_cast<int>(i)).second)
      throw ParseError(path + ".name: duplicate generator name");
    gens.push_back(std::move(g));
  }
  auto r2 = parse_relations(j, "relations2", 2, gen_index);
  auto r3 = parse_relations(j, "relations3", 3, gen_index);
  try {
    return proto::make_protoperad(std::move(gens), r2, r3);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("relations: ") + e.what());
  }
}

quad::QuadraticAlgebra parse_algebra(const json& j) {
  check_fields(j, {"schema", "kind", "generators", "relations"}, "$");
  check_schema(j, "algebra");
  if (!j.contains("generators") || !j.at("generators").is_array() ||
      j.at("generators").empty())
    throw ParseError("generators: expected a nonempty list");
  std::vector<std::string> gens;
  std::map<std::string, int> gen_index;
  for (size_t i = 0; i < j.at("generators").size(); ++i) {
    const json& e = j.at("generators")[i];
    if (!e.is_string())
      throw ParseError("generators[" + std::to_string(i) + "]: expected a string");
    std::string name = e.get<std::string>();
    if (!gen_index.emplace(name, static_cast<int>(i)).second)
      throw ParseError("generators[" + std::to_string(i) + "]: duplicate name");
    gens.push_back(std::move(name));
  }
  int g = static_cast<int>(gens.size());
  RationalMatrix rel(0, g * g);
  if (j.contains("relations")) {
    const json& arr = j.at("relations");
    if (!arr.is_array()) throw ParseError("relations: expected a list");
    for (size_t ri = 0; ri < arr.size(); ++ri) {
      std::string rpath = "relations[" + std::to_string(ri) + "]";
      if (!arr[ri].is_array()) throw ParseError(rpath + ": expected a list of terms");
      RationalMatrix::Row row;
      for (size_t ti = 0; ti < arr[ri].size(); ++ti) {
        std::string tpath = rpath + "[" + std::to_string(ti) + "]";
        const json& jt = arr[ri][ti];
        check_fields(jt, {"word", "coeff"}, tpath);
        if (!jt.contains("word") || !jt.at("word").is_array() ||
            jt.at("word").size() != 2)
          throw ParseError(tpath + ".word: expected a two-generator word");
        int ids[2];
        for (int k = 0; k < 2; ++k) {
          const json& w = jt.at("word")[k];
          if (!w.is_string()) throw ParseError(tpath + ".word: expected strings");
          auto it = gen_index.find(w.get<std::string>());
          if (it == gen_index.end())
            throw ParseError(tpath + ".word: unknown generator '" +
                             w.get<std::string>() + "'");
          ids[k] = it->second;
        }
        row.emplace_back(quad::word2_col(g, ids[0], ids[1]), coeff_at(jt, tpath));
      }
      rel.append_row(row);
    }
  }
  return quad::make_algebra(std::move(gens), rel);
}

namespace {

json parse_text(const std::string& text, const std::string& path) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError(path + ": invalid JSON");
  return j;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot write");
  out << contents;
}

proto::BinaryQuadraticProtoperad load_protoperad(const std::string& path) {
  return parse_protoperad(parse_text(read_file(path), path));
}

quad::QuadraticAlgebra load_algebra(const std::string& path) {
  return parse_algebra(parse_text(read_file(path), path));
}

json protoperad_json(const proto::BinaryQuadraticProtoperad& p) {
  json j;
  j["schema"] = "pkit/1";
  j["kind"] = "protoperad";
  j["convention"] = "dual pairing: identity on the ascending-input wall basis";
  j["generators"] = json::array();
  for (const proto::GeneratorSpec& g : p.generators)
    j["generators"].push_back(
        {{"name", g.name},
         {"symmetry", g.symmetry == proto::Symmetry::symmetric ? "symmetric"
                                                               : "antisymmetric"}});
  int m = p.num_generators();
  for (int arity : {2, 3}) {
    proto::Weight2Basis basis = proto::weight2_basis(arity, m);
    const RationalMatrix& rel = arity == 2 ? p.relations2 : p.relations3;
    json arr = json::array();
    for (int i = 0; i < rel.rows(); ++i) {
      json terms = json::array();
      for (const auto& [c, v] : rel.row(i)) {
        const walls::Wall& w = basis.wall_list[basis.wall_of(c)];
        terms.push_back({{"bottom_brick", w.bricks[0]},
                         {"top_brick", w.bricks[1]},
                         {"bottom_gen", p.generators[basis.bottom_of(c)].name},
                         {"top_gen", p.generators[basis.top_of(c)].name},
                         {"coeff", rational_str(v)}});
      }
      arr.push_back({{"terms", terms}});
    }
    j[arity == 2 ? "relations2" : "relations3"] = arr;
  }
  return j;
}

json algebra_json(const quad::QuadraticAlgebra& a) {
  json j;
  j["schema"] = "pkit/1";
  j["kind"] = "algebra";
  j["generators"] = a.generators;
  int g = a.num_generators();
  json rels = json::array();
  for (int i = 0; i < a.relations.rows(); ++i) {
    if (a.relations.row(i).empty()) continue;
    json terms = json::array();
    for (const auto& [c, v] : a.relations.row(i))
      terms.push_back(
          {{"word", json::array({a.generators[c / g], a.generators[c % g]})},
           {"coeff", rational_str(v)}});
    rels.push_back(terms);
  }
  j["relations"] = rels;
  return j;
}

json wall_json(const walls::Wall& w) {
  json j;
  j["bricks"] = w.bricks;
  json order = json::array();
  for (auto [a, b] : w.cover_pairs()) order.push_back(json::array({a, b}));
  j["order"] = order;
  return j;
}

json partition_json(const walls::Partition& p) {
  json j = json::array();
  for (const auto& b : p.blocks) j.push_back(b);
  return j;
}

json certificate_json(const quad::Certificate& cert,
                      const std::vector<std::string>& gen_names) {
  json j;
  j["status"] =
      cert.status == quad::CertStatus::PBWKoszul ? "PBWKoszul" : "Inconclusive";
  json attempts = json::array();
  for (const quad::OrderAttempt& att : cert.attempts) {
    json a;
    // generators listed from smallest to largest in this order
    std::vector<std::string> by_rank(gen_names.size());
    for (size_t i = 0; i < gen_names.size(); ++i)
      by_rank[att.order.rank[i]] = gen_names[i];
    a["order"] = by_rank;
    a["rule_count"] = att.rule_count;
    a["critical_count"] = att.report.critical_count;
    a["confluent"] = att.report.confluent;
    json rules = json::array();
    for (const quad::RewriteRule& r : att.rules)
      rules.push_back({{"lhs", quad::word_str(r.lhs, gen_names)},
                       {"rhs", quad::lincomb_str(r.rhs, gen_names)}});
    a["rules"] = rules;
    json fails = json::array();
    for (const quad::ConfluenceFailure& f : att.report.failures) {
      json jf;
      jf["critical"] = quad::word_str(f.critical, gen_names);
      jf["normal_forms"] = f.normal_forms;
      jf["traces"] = f.traces;
      fails.push_back(jf);
    }
    a["failures"] = fails;
    attempts.push_back(a);
  }
  j["attempts"] = attempts;
  if (cert.witness_index >= 0) j["witness"] = cert.witness_index;
  return j;
}

}  // namespace pkit::io
