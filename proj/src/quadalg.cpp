#include "pkit/quadalg.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "pkit/parallel.hpp"

namespace pkit::quad {

LinComb lincomb_add(const LinComb& a, const LinComb& b) {
  LinComb out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].word < b[j].word)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].word < a[i].word) {
      out.push_back(b[j++]);
    } else {
      Rational c = a[i].coeff + b[j].coeff;
      if (!is_zero(c)) out.push_back({a[i].word, c});
      ++i, ++j;
    }
  }
  return out;
}

LinComb lincomb_scale(const LinComb& a, const Rational& c) {
  if (is_zero(c)) return {};
  LinComb out = a;
  for (Term& t : out) t.coeff *= c;
  return out;
}

LinComb lincomb_single(const Word& w, const Rational& c) {
  if (is_zero(c)) return {};
  return {{w, c}};
}

std::string word_str(const Word& w, const std::vector<std::string>& gens) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ".";
    s += gens[w[i]];
  }
  return s;
}

std::string lincomb_str(const LinComb& c, const std::vector<std::string>& gens) {
  if (c.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < c.size(); ++i) {
    const Rational& q = c[i].coeff;
    if (i == 0) {
      if (q == -1)
        s += "-";
      else if (q != 1)
        s += rational_str(q) + "*";
    } else {
      if (q == 1)
        s += " + ";
      else if (q == -1)
        s += " - ";
      else if (sgn(q) > 0)
        s += " + " + rational_str(q) + "*";
      else
        s += " - " + rational_str(-q) + "*";
    }
    s += word_str(c[i].word, gens);
  }
  return s;
}

QuadraticAlgebra make_algebra(std::vector<std::string> generators,
                              const RationalMatrix& relation_rows) {
  int g = static_cast<int>(generators.size());
  {
    std::set<std::string> uniq(generators.begin(), generators.end());
    if (static_cast<int>(uniq.size()) != g)
      throw std::invalid_argument("generator names must be unique");
  }
  if (relation_rows.cols() != g * g)
    throw std::invalid_argument("relation matrix must have g^2 columns");
  return {std::move(generators), rref(relation_rows).matrix};
}

bool MonomialOrder::word_less(const Word& a, const Word& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i)
    if (rank[a[i]] != rank[b[i]]) return rank[a[i]] < rank[b[i]];
  return false;
}

MonomialOrder identity_order(int g) {
  MonomialOrder o;
  o.rank.resize(g);
  std::iota(o.rank.begin(), o.rank.end(), 0);
  return o;
}

MonomialOrder reversed_order(int g) {
  MonomialOrder o;
  o.rank.resize(g);
  for (int i = 0; i < g; ++i) o.rank[i] = g - 1 - i;
  return o;
}

const LinComb* RewriteSystem::rule(int a, int b) const {
  auto it = rules.find({a, b});
  return it == rules.end() ? nullptr : &it->second;
}

std::vector<RewriteRule> RewriteSystem::rule_list() const {
  std::vector<RewriteRule> out;
  out.reserve(rules.size());
  for (const auto& [lhs, rhs] : rules)
    out.push_back({{lhs.first, lhs.second}, rhs});
  return out;
}

QuadraticAlgebra quadratic_dual(const QuadraticAlgebra& a) {
  int g = a.num_generators();
  std::vector<std::string> dual_names;
  dual_names.reserve(g);
  for (const std::string& s : a.generators) dual_names.push_back(s + "*");
  // orthogonal complement of the row space under the dual-basis pairing
  RationalMatrix ortho(0, g * g);
  for (const auto& v : kernel_basis(a.relations)) {
    RationalMatrix::Row r;
    for (int j = 0; j < g * g; ++j)
      if (!is_zero(v[j])) r.emplace_back(j, v[j]);
    ortho.append_row(r);
  }
  return make_algebra(std::move(dual_names), ortho);
}

RewriteSystem derive_rewrite_system(const QuadraticAlgebra& a,
                                    const MonomialOrder& o) {
  int g = a.num_generators();
  // columns sorted by descending word order, so each pivot is the largest
  // word of its relation
  std::vector<int> cols(g * g);
  std::iota(cols.begin(), cols.end(), 0);
  std::sort(cols.begin(), cols.end(), [&](int x, int y) {
    Word wx = {x / g, x % g}, wy = {y / g, y % g};
    return o.word_less(wy, wx);
  });
  RrefResult r = rref_in_column_order(a.relations, cols);

  RewriteSystem rs;
  rs.num_generators = g;
  rs.order = o;
  for (size_t i = 0; i < r.pivots.size(); ++i) {
    int p = r.pivots[i];
    LinComb rhs;
    for (const auto& [c, v] : r.matrix.row(static_cast<int>(i))) {
      if (c == p) continue;
      rhs.push_back({{c / g, c % g}, -v});
    }
    std::sort(rhs.begin(), rhs.end(),
              [](const Term& x, const Term& y) { return x.word < y.word; });
    rs.rules.emplace(std::make_pair(p / g, p % g), std::move(rhs));
  }
  return rs;
}

namespace {

// position of the factor to rewrite in w, or -1
int pick_position(const RewriteSystem& rs, const Word& w, Strategy s) {
  int n = static_cast<int>(w.size());
  if (s == Strategy::rightmost) {
    for (int i = n - 2; i >= 0; --i)
      if (rs.reducible(w[i], w[i + 1])) return i;
    return -1;
  }
  for (int i = 0; i + 1 < n; ++i)
    if (rs.reducible(w[i], w[i + 1])) return i;
  return -1;
}

LinComb rewrite_at(const RewriteSystem& rs, const Word& w, int pos) {
  const LinComb& rhs = *rs.rule(w[pos], w[pos + 1]);
  LinComb out;
  for (const Term& t : rhs) {
    Word nw(w.begin(), w.begin() + pos);
    nw.insert(nw.end(), t.word.begin(), t.word.end());
    nw.insert(nw.end(), w.begin() + pos + 2, w.end());
    out = lincomb_add(out, lincomb_single(nw, t.coeff));
  }
  return out;
}

}  // namespace

LinComb normal_form(const RewriteSystem& rs, const Word& w, Strategy s,
                    std::vector<std::string>* trace,
                    const std::vector<std::string>* gen_names) {
  LinComb cur = lincomb_single(w);
  if (trace && gen_names) trace->push_back(lincomb_str(cur, *gen_names));
  while (true) {
    // each step replaces one word by strictly smaller words in the
    // degree-preserving well-order, so this terminates
    int best = -1, best_pos = -1;
    for (int i = 0; i < static_cast<int>(cur.size()); ++i) {
      int pos = pick_position(rs, cur[i].word, s);
      if (pos < 0) continue;
      if (s == Strategy::largest_word_first) {
        if (best < 0 || rs.order.word_less(cur[best].word, cur[i].word)) {
          best = i;
          best_pos = pos;
        }
      } else {
        best = i;
        best_pos = pos;
        break;
      }
    }
    if (best < 0) break;
    Term t = cur[best];
    cur = lincomb_add(cur, lincomb_single(t.word, -t.coeff));
    cur = lincomb_add(cur, lincomb_scale(rewrite_at(rs, t.word, best_pos), t.coeff));
    if (trace && gen_names) trace->push_back(lincomb_str(cur, *gen_names));
  }
  return cur;
}

LinComb normal_form(const RewriteSystem& rs, const LinComb& c, Strategy s) {
  LinComb out;
  for (const Term& t : c)
    out = lincomb_add(out, lincomb_scale(normal_form(rs, t.word, s), t.coeff));
  return out;
}

std::vector<Word> critical_monomials(const RewriteSystem& rs) {
  std::vector<Word> out;
  for (const auto& [uv, rhs1] : rs.rules)
    for (const auto& [vw, rhs2] : rs.rules)
      if (uv.second == vw.first)
        out.push_back({uv.first, uv.second, vw.second});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ConfluenceReport check_confluence(const RewriteSystem& rs,
                                  const std::vector<std::string>* gen_names) {
  std::vector<Word> crits = critical_monomials(rs);
  ConfluenceReport rep;
  rep.critical_count = static_cast<long>(crits.size());

  std::vector<std::string> fallback_names;
  if (!gen_names) {
    for (int i = 0; i < rs.num_generators; ++i)
      fallback_names.push_back("g" + std::to_string(i));
    gen_names = &fallback_names;
  }

  const Strategy strategies[] = {Strategy::leftmost, Strategy::rightmost,
                                 Strategy::largest_word_first};
  std::vector<std::optional<ConfluenceFailure>> results(crits.size());
  parallel_for(static_cast<int>(crits.size()), [&](int idx) {
    const Word& w = crits[idx];
    std::vector<LinComb> forms;
    std::vector<std::vector<std::string>> traces;
    for (Strategy s : strategies) {
      std::vector<std::string> tr;
      forms.push_back(normal_form(rs, w, s, &tr, gen_names));
      traces.push_back(std::move(tr));
    }
    bool ok = true;
    for (size_t k = 1; k < forms.size(); ++k)
      if (!(forms[k] == forms[0])) ok = false;
    if (!ok) {
      ConfluenceFailure f;
      f.critical = w;
      f.critical_str = word_str(w, *gen_names);
      for (const LinComb& c : forms) {
        std::string s = lincomb_str(c, *gen_names);
        if (std::find(f.normal_forms.begin(), f.normal_forms.end(), s) ==
            f.normal_forms.end())
          f.normal_forms.push_back(s);
      }
      f.traces = traces;
      results[idx] = std::move(f);
    }
  });
  for (auto& r : results)
    if (r) rep.failures.push_back(std::move(*r));
  rep.confluent = rep.failures.empty();
  return rep;
}

std::vector<Integer> hilbert_coeffs(const RewriteSystem& rs, int max_degree) {
  // counted via the allowed-adjacency transfer recursion
  ConfluenceReport rep = check_confluence(rs);
  if (!rep.confluent)
    throw NotConfluent("hilbert_coeffs requires a confluent rewrite system");
  int g = rs.num_generators;
  std::vector<Integer> coeffs;
  coeffs.push_back(1);
  if (max_degree >= 1) {
    std::vector<Integer> cnt(g, 1);
    Integer total = g;
    coeffs.push_back(total);
    for (int d = 2; d <= max_degree; ++d) {
      std::vector<Integer> next(g, 0);
      for (int a = 0; a < g; ++a) {
        if (cnt[a] == 0) continue;
        for (int b = 0; b < g; ++b)
          if (!rs.reducible(a, b)) next[b] += cnt[a];
      }
      cnt = std::move(next);
      Integer t = 0;
      for (const Integer& x : cnt) t += x;
      coeffs.push_back(t);
    }
  }
  return coeffs;
}

std::vector<long> graded_dims_by_ideal(const QuadraticAlgebra& a, int max_degree) {
  int g = a.num_generators();
  std::vector<long> dims;
  dims.push_back(1);
  double size = 1;
  for (int d = 1; d <= max_degree; ++d) {
    size *= g;
    if (size > 2e6) throw DimensionsUnavailable("ideal span too large");
    long words = 1;
    for (int i = 0; i < d; ++i) words *= g;
    if (d < 2) {
      dims.push_back(words);
      continue;
    }
    // rows u (x) r (x) v over all split positions
    RationalMatrix span(0, words);
    long left_words = 1;
    for (int pos = 0; pos + 2 <= d; ++pos, left_words *= g) {
      long right_words = words / (left_words * g * g);
      for (long u = 0; u < left_words; ++u)
        for (int ri = 0; ri < a.relations.rows(); ++ri) {
          if (a.relations.row(ri).empty()) continue;
          for (long v = 0; v < right_words; ++v) {
            RationalMatrix::Row row;
            for (const auto& [c, val] : a.relations.row(ri)) {
              long col = (u * g * g + c) * right_words + v;
              row.emplace_back(static_cast<int>(col), val);
            }
            span.append_row(row);
          }
        }
    }
    dims.push_back(words - rank(span));
  }
  return dims;
}

std::vector<Integer> graded_dims(const QuadraticAlgebra& a, int max_degree) {
  int g = a.num_generators();
  for (const MonomialOrder& o : {identity_order(g), reversed_order(g)}) {
    RewriteSystem rs = derive_rewrite_system(a, o);
    if (check_confluence(rs).confluent) return hilbert_coeffs(rs, max_degree);
  }
  // a confluent system under any order gives the dimensions
  Certificate cert = certify_koszul_search(a, 8);
  if (cert.status == CertStatus::PBWKoszul) {
    RewriteSystem rs =
        derive_rewrite_system(a, cert.attempts[cert.witness_index].order);
    return hilbert_coeffs(rs, max_degree);
  }
  // last resort: ideal spans, which are only affordable at small sizes
  double words = 1;
  for (int d = 1; d <= max_degree; ++d) {
    words *= g;
    if (words > 8000)
      throw DimensionsUnavailable(
          "no confluent rewrite system found and the degree-" +
          std::to_string(d) + " ideal span is too large");
  }
  std::vector<Integer> out;
  for (long d : graded_dims_by_ideal(a, max_degree)) out.push_back(d);
  return out;
}

bool koszul_numerical_check(const QuadraticAlgebra& a, int max_degree) {
  std::vector<Integer> h = graded_dims(a, max_degree);
  QuadraticAlgebra dual = quadratic_dual(a);
  // a confluent order for the algebra makes its opposite the first candidate
  // for the dual
  std::vector<Integer> hd;
  bool have_dual = false;
  Certificate ca = certify_koszul_search(a, 8);
  if (ca.status == CertStatus::PBWKoszul) {
    const MonomialOrder& w = ca.attempts[ca.witness_index].order;
    MonomialOrder opp;
    int g = a.num_generators();
    opp.rank.resize(g);
    for (int i = 0; i < g; ++i) opp.rank[i] = g - 1 - w.rank[i];
    RewriteSystem rs = derive_rewrite_system(dual, opp);
    if (check_confluence(rs).confluent) {
      hd = hilbert_coeffs(rs, max_degree);
      have_dual = true;
    }
  }
  if (!have_dual) hd = graded_dims(dual, max_degree);
  for (int d = 0; d <= max_degree; ++d) {
    Integer sum = 0;
    for (int j = 0; j <= d; ++j) {
      Integer t = h[d - j] * hd[j];
      if (j % 2)
        sum -= t;
      else
        sum += t;
    }
    if (sum != (d == 0 ? 1 : 0)) return false;
  }
  return true;
}

const OrderAttempt& Certificate::best() const {
  if (attempts.empty()) throw std::logic_error("no attempts");
  if (witness_index >= 0) return attempts[witness_index];
  size_t best = 0;
  for (size_t i = 1; i < attempts.size(); ++i)
    if (attempts[i].report.failures.size() < attempts[best].report.failures.size())
      best = i;
  return attempts[best];
}

Certificate certify_koszul(const QuadraticAlgebra& a,
                           const std::vector<MonomialOrder>& orders) {
  Certificate cert;
  for (const MonomialOrder& o : orders) {
    RewriteSystem rs = derive_rewrite_system(a, o);
    OrderAttempt att{o, check_confluence(rs, &a.generators), rs.rule_list(),
                     static_cast<long>(rs.rules.size())};
    bool ok = att.report.confluent;
    cert.attempts.push_back(std::move(att));
    if (ok) {
      cert.status = CertStatus::PBWKoszul;
      cert.witness_index = static_cast<int>(cert.attempts.size()) - 1;
      break;
    }
  }
  return cert;
}

Certificate certify_koszul_search(const QuadraticAlgebra& a, int budget,
                                  unsigned seed) {
  int g = a.num_generators();
  std::vector<MonomialOrder> orders{identity_order(g)};
  if (g > 1) orders.push_back(reversed_order(g));
  std::mt19937_64 rng(seed);
  std::set<std::vector<int>> seen;
  for (const MonomialOrder& o : orders) seen.insert(o.rank);
  for (int k = 0; k < budget; ++k) {
    MonomialOrder o = identity_order(g);
    std::shuffle(o.rank.begin(), o.rank.end(), rng);
    if (seen.insert(o.rank).second) orders.push_back(o);
  }
  return certify_koszul(a, orders);
}

}  // namespace pkit::quad
