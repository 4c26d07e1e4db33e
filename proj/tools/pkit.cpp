#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pkit/barhom.hpp"
#include "pkit/json_io.hpp"
#include "pkit/protoperad.hpp"
#include "pkit/quadalg.hpp"
#include "pkit/walls.hpp"

namespace {

using pkit::io::json;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    pkit::io::write_file(out_path, text + "\n");
  }
}

std::string render(const json& j, const std::string& format) {
  if (format == "json") return j.dump(2);
  // text: a compact human-readable tree
  std::ostringstream os;
  std::function<void(const json&, int)> walk = [&](const json& v, int indent) {
    std::string pad(indent, ' ');
    if (v.is_object()) {
      for (auto it = v.begin(); it != v.end(); ++it) {
        os << pad << it.key() << ":";
        if (it.value().is_primitive()) {
          os << " " << it.value().dump() << "\n";
        } else {
          os << "\n";
          walk(it.value(), indent + 2);
        }
      }
    } else if (v.is_array()) {
      for (const json& e : v) {
        if (e.is_primitive()) {
          os << pad << "- " << e.dump() << "\n";
        } else {
          os << pad << "-\n";
          walk(e, indent + 2);
        }
      }
    } else {
      os << pad << v.dump() << "\n";
    }
  };
  walk(j, 0);
  return os.str();
}

json verdict_json(const pkit::proto::KoszulVerdict& v) {
  json j;
  j["schema"] = "pkit/1";
  j["verdict"] = v.certified
                     ? "CertifiedThroughArity(" + std::to_string(v.through_arity) + ")"
                     : "InconclusiveAtArity(" + std::to_string(v.inconclusive_at) + ")";
  j["certified"] = v.certified;
  json arr = json::array();
  for (const pkit::proto::ArityReport& r : v.reports) {
    json a;
    a["n"] = r.n;
    a["status"] = r.status == pkit::quad::CertStatus::PBWKoszul ? "PBWKoszul"
                                                                : "Inconclusive";
    a["rule_count"] = r.rule_count;
    a["critical_count"] = r.critical_count;
    a["hilbert_identity"] =
        r.hilbert == pkit::proto::HilbertStatus::ok
            ? "ok"
            : (r.hilbert == pkit::proto::HilbertStatus::failed ? "failed"
                                                               : "unavailable");
    if (r.bar) {
      a["bar_cross_check"] = {{"concentrated", r.bar->concentrated},
                              {"normalized_dims_agree", r.bar->dims_agree},
                              {"top_homology", r.bar->top_homology}};
    }
    arr.push_back(a);
  }
  j["arities"] = arr;
  return j;
}

pkit::quad::MonomialOrder order_from_names(
    const std::vector<std::string>& gens, const std::string& comma_list) {
  std::vector<std::string> names;
  std::string tok;
  std::istringstream ss(comma_list);
  while (std::getline(ss, tok, ',')) names.push_back(tok);
  if (names.size() != gens.size())
    throw pkit::io::ParseError("--gen-order must list every generator exactly once");
  pkit::quad::MonomialOrder o;
  o.rank.assign(gens.size(), -1);
  for (size_t rank = 0; rank < names.size(); ++rank) {
    auto it = std::find(gens.begin(), gens.end(), names[rank]);
    if (it == gens.end())
      throw pkit::io::ParseError("--gen-order: unknown generator '" + names[rank] + "'");
    int idx = static_cast<int>(it - gens.begin());
    if (o.rank[idx] >= 0)
      throw pkit::io::ParseError("--gen-order: generator repeated");
    o.rank[idx] = static_cast<int>(rank);
  }
  return o;
}

// Confluence failures printed with the two reduction traces side by side.
std::string failure_diagram(const pkit::quad::ConfluenceFailure& f) {
  std::ostringstream os;
  os << "critical monomial " << f.critical_str << " reduces to:";
  for (const std::string& nf : f.normal_forms) os << "  " << nf;
  os << "\n";
  const auto& left = f.traces[0];
  const auto& right = f.traces.size() > 1 ? f.traces[1] : f.traces[0];
  size_t width = 12;
  for (const std::string& s : left) width = std::max(width, s.size());
  size_t rows = std::max(left.size(), right.size());
  os << "  " << std::string(width, '-') << "+" << std::string(width, '-') << "\n";
  for (size_t i = 0; i < rows; ++i) {
    std::string l = i < left.size() ? left[i] : "";
    std::string r = i < right.size() ? right[i] : "";
    os << "  " << l << std::string(width - l.size() + 1, ' ') << "| " << r << "\n";
  }
  return os.str();
}

int cmd_check(const std::string& input, int max_arity, int bar_arity,
              int hilbert_degree, int orders, bool algebra_mode,
              const std::string& gen_order, const std::string& out,
              const std::string& format) {
  if (algebra_mode) {
    pkit::quad::QuadraticAlgebra a = pkit::io::load_algebra(input);
    pkit::quad::Certificate cert;
    if (!gen_order.empty()) {
      cert = pkit::quad::certify_koszul(a, {order_from_names(a.generators, gen_order)});
    } else {
      cert = pkit::quad::certify_koszul_search(a, orders);
    }
    json j = pkit::io::certificate_json(cert, a.generators);
    j["hilbert_identity"] = pkit::quad::koszul_numerical_check(a, hilbert_degree);
    if (format == "text") {
      std::ostringstream os;
      os << render(j, format);
      for (const auto& att : cert.attempts)
        for (const auto& f : att.report.failures) os << failure_diagram(f);
      emit(os.str(), out);
    } else {
      emit(render(j, format), out);
    }
    return cert.status == pkit::quad::CertStatus::PBWKoszul ? 0 : 2;
  }
  pkit::proto::BinaryQuadraticProtoperad p = pkit::io::load_protoperad(input);
  pkit::proto::CheckOptions opts;
  opts.hilbert_degree = hilbert_degree;
  opts.order_budget = orders;
  pkit::proto::KoszulVerdict v = pkit::proto::check_koszul(p, max_arity, bar_arity, opts);
  emit(render(verdict_json(v), format), out);
  return v.certified ? 0 : 2;
}

int cmd_dual(const std::string& input, bool algebra_mode, int n,
             const std::string& out, const std::string& format) {
  pkit::proto::BinaryQuadraticProtoperad p = pkit::io::load_protoperad(input);
  if (algebra_mode) {
    pkit::proto::LabeledAlgebra A = pkit::proto::build_algebra(p, n);
    json j = pkit::io::algebra_json(pkit::quad::quadratic_dual(A.algebra));
    emit(render(j, format), out);
    return 0;
  }
  json j = pkit::io::protoperad_json(pkit::proto::dual_presentation(p));
  emit(render(j, format), out);
  return 0;
}

int cmd_walls(int n, int bricks, const std::vector<int>& sizes,
              const std::string& out, const std::string& format) {
  std::set<int> size_set(sizes.begin(), sizes.end());
  if (size_set.empty()) size_set.insert(2);
  std::vector<pkit::walls::Wall> ws = pkit::walls::enum_walls(n, bricks, size_set);
  json j;
  j["schema"] = "pkit/1";
  j["n"] = n;
  j["bricks"] = bricks;
  j["count"] = ws.size();
  json arr = json::array();
  for (const pkit::walls::Wall& w : ws) arr.push_back(pkit::io::wall_json(w));
  j["walls"] = arr;
  emit(render(j, format), out);
  return 0;
}

json homology_json(const pkit::bar::ChainComplex& c) {
  pkit::bar::HomologyReport h = pkit::bar::homology_ranks(c);
  json dims = json::object();
  json hom = json::object();
  for (int d = 1; d <= c.max_degree(); ++d) {
    dims[std::to_string(d)] = c.dim(d);
    hom[std::to_string(d)] = h.dims[d];
  }
  return {{"dims", dims}, {"homology", hom}};
}

// CSV rows for plotting: complex,n,weight,degree,dim,homology
std::string homology_csv(const std::string& name, const pkit::bar::ChainComplex& c,
                         int n) {
  pkit::bar::HomologyReport h = pkit::bar::homology_ranks(c);
  std::ostringstream os;
  for (int d = 1; d <= c.max_degree(); ++d)
    os << name << "," << n << "," << c.weight << "," << d << "," << c.dim(d)
       << "," << h.dims[d] << "\n";
  return os.str();
}

int cmd_bar(const std::string& input, int n, int weight, const std::string& out,
            const std::string& format) {
  pkit::proto::BinaryQuadraticProtoperad p = pkit::io::load_protoperad(input);
  pkit::proto::LabeledAlgebra A = pkit::proto::build_algebra(p, n);
  pkit::bar::ChainComplex conn = pkit::bar::connected_bar_component(A, weight);
  pkit::bar::ChainComplex norm = pkit::bar::normalized_bar_complex(p, n, weight);
  if (format == "csv") {
    std::string csv = "complex,n,weight,degree,dim,homology\n" +
                      homology_csv("connected_bar", conn, n) +
                      homology_csv("normalized_bar", norm, n);
    emit(csv, out);
    return 0;
  }
  json j;
  j["schema"] = "pkit/1";
  j["n"] = n;
  j["weight"] = weight;
  j["connected_bar"] = homology_json(conn);
  j["normalized_bar"] = homology_json(norm);
  bool agree = true;
  for (int d = 1; d <= weight; ++d) {
    if (conn.dim(d) != norm.dim(d)) agree = false;
    if (j["connected_bar"]["homology"][std::to_string(d)] !=
        j["normalized_bar"]["homology"][std::to_string(d)])
      agree = false;
  }
  j["agreement"] = agree;
  emit(render(j, format), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pkit: Koszulness workbench for binary quadratic protoperads"};
  app.require_subcommand(1);

  std::string input, out, format = "json", gen_order;
  int max_arity = 5, bar_arity = 3, hilbert_degree = 6, orders = 8;
  int n = 3, bricks = 2, weight = 2;
  std::vector<int> sizes;
  bool algebra_mode = false;

  CLI::App* check = app.add_subcommand("check", "certify Koszulness of a presentation");
  check->add_option("input", input, "presentation file")->required();
  check->add_option("--max-arity", max_arity, "largest ground-set size to certify")
      ->check(CLI::Range(2, 16));
  check->add_option("--bar-arity", bar_arity, "bar-homology cross-check bound")
      ->check(CLI::Range(2, 16));
  check->add_option("--hilbert-degree", hilbert_degree, "Hilbert identity degree bound")
      ->check(CLI::Range(2, 64));
  check->add_option("--orders", orders, "random generator orders to try")
      ->check(CLI::Range(0, 10000));
  check->add_flag("--algebra", algebra_mode, "input is a quadratic algebra");
  check->add_option("--gen-order", gen_order,
                    "comma-separated generator list, smallest first (with --algebra)");
  check->add_option("--out", out, "write the report here");
  check->add_option("--format", format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));

  CLI::App* dual = app.add_subcommand("dual", "emit the Koszul-dual presentation");
  dual->add_option("input", input, "presentation file")->required();
  dual->add_flag("--algebra", algebra_mode, "emit the dual of A(P,n) instead");
  dual->add_option("--n", n, "ground-set size for --algebra");
  dual->add_option("--out", out, "write the presentation here");
  dual->add_option("--format", format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));

  CLI::App* wallscmd = app.add_subcommand("walls", "enumerate connected walls");
  wallscmd->add_option("--n", n, "ground-set size")->required();
  wallscmd->add_option("--bricks", bricks, "brick count")->required();
  wallscmd->add_option("--sizes", sizes, "allowed brick sizes (default 2)");
  wallscmd->add_option("--out", out, "write the listing here");
  wallscmd->add_option("--format", format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));

  CLI::App* bar = app.add_subcommand("bar", "bar homology tables");
  bar->add_option("input", input, "presentation file")->required();
  bar->add_option("--n", n, "ground-set size")->required();
  bar->add_option("--weight", weight, "weight of the bar component")->required();
  bar->add_option("--out", out, "write the table here");
  bar->add_option("--format", format, "json|text|csv")
      ->check(CLI::IsMember({"json", "text", "csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed())
      return cmd_check(input, max_arity, bar_arity, hilbert_degree, orders,
                       algebra_mode, gen_order, out, format);
    if (dual->parsed()) return cmd_dual(input, algebra_mode, n, out, format);
    if (wallscmd->parsed()) return cmd_walls(n, bricks, sizes, out, format);
    if (bar->parsed()) return cmd_bar(input, n, weight, out, format);
  } catch (const pkit::io::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
