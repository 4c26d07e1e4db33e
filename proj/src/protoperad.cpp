#include "pkit/protoperad.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "pkit/barhom.hpp"
#include "pkit/parallel.hpp"

namespace pkit::proto {

int Weight2Basis::find_wall(const walls::Wall& w) const {
  for (size_t i = 0; i < wall_list.size(); ++i)
    if (wall_list[i] == w) return static_cast<int>(i);
  return -1;
}

Weight2Basis weight2_basis(int arity, int m) {
  Weight2Basis b;
  b.arity = arity;
  b.m = m;
  b.wall_list = walls::enum_walls(arity, 2, {2});
  return b;
}

namespace {

// Normalizes a brick given as an input list: returns (sorted brick, swap flag).
std::pair<std::vector<int>, bool> normalize_brick(const std::vector<int>& in) {
  if (in.size() != 2 || in[0] == in[1])
    throw std::invalid_argument("bricks of a binary relation term must have two distinct inputs");
  if (in[0] < in[1]) return {in, false};
  return {{in[1], in[0]}, true};
}

int term_sign(const GeneratorSpec& g, bool swapped) {
  return (swapped && g.symmetry == Symmetry::antisymmetric) ? -1 : 1;
}

RationalMatrix::Row relation_row(const Weight2Basis& basis,
                                 const std::vector<GeneratorSpec>& gens,
                                 const std::vector<RelationTerm>& terms) {
  RationalMatrix::Row row;
  for (const RelationTerm& t : terms) {
    auto [bot, bswap] = normalize_brick(t.bottom_brick);
    auto [top, tswap] = normalize_brick(t.top_brick);
    walls::Wall w = walls::make_wall(basis.arity, {bot, top}, {{0, 1}});
    if (!walls::is_connected(basis.arity, w))
      throw std::invalid_argument("relation term wall is not connected");
    int wi = basis.find_wall(w);
    if (wi < 0) throw std::invalid_argument("relation term wall not in weight-2 basis");
    int sign = term_sign(gens[t.bottom_gen], bswap) * term_sign(gens[t.top_gen], tswap);
    row.emplace_back(basis.index(wi, t.bottom_gen, t.top_gen),
                     sign > 0 ? t.coeff : -t.coeff);
  }
  return row;
}

std::vector<std::vector<int>> permutations_of(int a) {
  std::vector<int> sigma(a);
  std::iota(sigma.begin(), sigma.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

}  // namespace

std::pair<int, int> weight2_act(const Weight2Basis& basis,
                                const std::vector<GeneratorSpec>& gens,
                                const std::vector<int>& sigma, int basis_index) {
  const walls::Wall& w = basis.wall_list[basis.wall_of(basis_index)];
  int sign = 1;
  std::vector<std::vector<int>> imgs(2);
  int gen_of[2] = {basis.bottom_of(basis_index), basis.top_of(basis_index)};
  for (int b = 0; b < 2; ++b) {
    std::vector<int> img;
    for (int e : w.bricks[b]) img.push_back(sigma[e - 1]);
    bool swapped = img[0] > img[1];
    if (swapped) std::swap(img[0], img[1]);
    sign *= term_sign(gens[gen_of[b]], swapped);
    imgs[b] = img;
  }
  walls::Wall nw = walls::make_wall(basis.arity, {imgs[0], imgs[1]}, {{0, 1}});
  int wi = basis.find_wall(nw);
  if (wi < 0) throw std::logic_error("weight2_act: image wall missing");
  return {basis.index(wi, gen_of[0], gen_of[1]), sign};
}

namespace {

// Orbit span of the input rows under the full symmetric-group action, rref'd.
RationalMatrix close_under_action(const Weight2Basis& basis,
                                  const std::vector<GeneratorSpec>& gens,
                                  const RationalMatrix& rows) {
  RationalMatrix closed(0, basis.dim());
  for (const auto& sigma : permutations_of(basis.arity))
    for (int i = 0; i < rows.rows(); ++i) {
      RationalMatrix::Row r;
      for (const auto& [c, v] : rows.row(i)) {
        auto [nc, sign] = weight2_act(basis, gens, sigma, c);
        r.emplace_back(nc, sign > 0 ? v : -v);
      }
      closed.append_row(r);
    }
  return rref(closed).matrix;
}

RationalMatrix drop_zero_rows(const RationalMatrix& m) {
  RationalMatrix out(0, m.cols());
  for (int i = 0; i < m.rows(); ++i)
    if (!m.row(i).empty()) out.append_row(m.row(i));
  return out;
}

}  // namespace

BinaryQuadraticProtoperad make_protoperad(
    std::vector<GeneratorSpec> generators,
    const std::vector<std::vector<RelationTerm>>& relations2,
    const std::vector<std::vector<RelationTerm>>& relations3) {
  int m = static_cast<int>(generators.size());
  if (m == 0) throw std::invalid_argument("a presentation needs at least one generator");
  {
    std::set<std::string> names;
    for (const GeneratorSpec& g : generators)
      if (!names.insert(g.name).second)
        throw std::invalid_argument("duplicate generator name: " + g.name);
  }
  Weight2Basis b2 = weight2_basis(2, m);
  Weight2Basis b3 = weight2_basis(3, m);

  RationalMatrix raw2(0, b2.dim()), raw3(0, b3.dim());
  for (const auto& terms : relations2) {
    RationalMatrix::Row r = relation_row(b2, generators, terms);
    raw2.append_row(r);
    if (raw2.row(raw2.rows() - 1).empty())
      throw std::invalid_argument("zero relation vector at arity 2");
  }
  for (const auto& terms : relations3) {
    raw3.append_row(relation_row(b3, generators, terms));
    if (raw3.row(raw3.rows() - 1).empty())
      throw std::invalid_argument("zero relation vector at arity 3");
  }

  BinaryQuadraticProtoperad p;
  p.relations2 = drop_zero_rows(close_under_action(b2, generators, raw2));
  p.relations3 = drop_zero_rows(close_under_action(b3, generators, raw3));
  p.generators = std::move(generators);
  return p;
}

long long free_dim(int num_generators, int n, int rho) {
  if (n < 1 || rho < 1) throw std::invalid_argument("free_dim: n, rho >= 1");
  long long count = static_cast<long long>(walls::enum_walls(n, rho, {2}).size());
  long long labels = 1;
  for (int i = 0; i < rho; ++i) labels *= num_generators;
  return count * labels;
}

Integer ind_dim(const std::function<long long(int)>& dims, int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f * Integer(std::to_string(dims(n)));
}

int LabeledAlgebra::gen_id(int i, int j, int nu) const {
  for (int k = 0; k < num_generators(); ++k)
    if (gen_pair[k] == std::make_pair(i, j) && gen_nu[k] == nu) return k;
  throw std::out_of_range("gen_id: no such generator");
}

LabeledAlgebra build_algebra(const BinaryQuadraticProtoperad& p, int n) {
  if (n < 2) throw std::invalid_argument("build_algebra: n >= 2");
  int m = p.num_generators();

  // pairs in the right-lexicographic order x_ij < x_kl iff j<l or (j=l, i<k)
  std::vector<std::pair<int, int>> pairs;
  for (int j = 2; j <= n; ++j)
    for (int i = 1; i < j; ++i) pairs.emplace_back(i, j);

  LabeledAlgebra A;
  A.n = n;
  A.m = m;
  std::map<std::pair<int, int>, int> pair_rank;
  std::vector<std::string> names;
  for (size_t k = 0; k < pairs.size(); ++k) {
    pair_rank[pairs[k]] = static_cast<int>(k);
    for (int nu = 0; nu < m; ++nu) {
      names.push_back(p.generators[nu].name + "_" + std::to_string(pairs[k].first) +
                      "_" + std::to_string(pairs[k].second));
      A.gen_pair.push_back(pairs[k]);
      A.gen_nu.push_back(nu);
    }
  }
  int g = static_cast<int>(names.size());
  auto gid = [&](std::pair<int, int> pr, int nu) { return pair_rank.at(pr) * m + nu; };

  RationalMatrix rel(0, g * g);
  Weight2Basis b2 = weight2_basis(2, m);
  Weight2Basis b3 = weight2_basis(3, m);

  // arity-2 instances r_ij
  for (int ri = 0; ri < p.relations2.rows(); ++ri)
    for (auto [i, j] : pairs) {
      RationalMatrix::Row row;
      for (const auto& [c, v] : p.relations2.row(ri)) {
        int a = gid({i, j}, b2.bottom_of(c));
        int b = gid({i, j}, b2.top_of(c));
        row.emplace_back(quad::word2_col(g, a, b), v);
      }
      rel.append_row(row);
    }

  // arity-3 instances r_ijk through the six wall shapes
  for (int ri = 0; ri < p.relations3.rows(); ++ri)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k) {
          int phi[4] = {0, i, j, k};
          RationalMatrix::Row row;
          for (const auto& [c, v] : p.relations3.row(ri)) {
            const walls::Wall& w = b3.wall_list[b3.wall_of(c)];
            std::pair<int, int> bot{phi[w.bricks[0][0]], phi[w.bricks[0][1]]};
            std::pair<int, int> top{phi[w.bricks[1][0]], phi[w.bricks[1][1]]};
            int a = gid(bot, b3.bottom_of(c));
            int b = gid(top, b3.top_of(c));
            row.emplace_back(quad::word2_col(g, a, b), v);
          }
          rel.append_row(row);
        }

  // parallelism commutators for disjoint pairs
  for (size_t x = 0; x < pairs.size(); ++x)
    for (size_t y = x + 1; y < pairs.size(); ++y) {
      auto [i, j] = pairs[x];
      auto [a, b] = pairs[y];
      if (i == a || i == b || j == a || j == b) continue;
      for (int nu = 0; nu < m; ++nu)
        for (int mu = 0; mu < m; ++mu) {
          int u = gid(pairs[x], nu), v = gid(pairs[y], mu);
          RationalMatrix::Row row;
          row.emplace_back(quad::word2_col(g, u, v), Rational(1));
          row.emplace_back(quad::word2_col(g, v, u), Rational(-1));
          rel.append_row(row);
        }
    }

  A.algebra = quad::make_algebra(std::move(names), rel);
  return A;
}

BinaryQuadraticProtoperad dual_presentation(const BinaryQuadraticProtoperad& p) {
  int m = p.num_generators();
  BinaryQuadraticProtoperad d;
  for (const GeneratorSpec& gsp : p.generators)
    // the Z/2-type is preserved: the pairing is S2-invariant
    d.generators.push_back({gsp.name + "*", gsp.symmetry});
  for (int arity : {2, 3}) {
    Weight2Basis b = weight2_basis(arity, m);
    const RationalMatrix& rel = arity == 2 ? p.relations2 : p.relations3;
    RationalMatrix ortho(0, b.dim());
    for (const auto& v : kernel_basis(rel)) {
      RationalMatrix::Row r;
      for (int c = 0; c < b.dim(); ++c)
        if (!is_zero(v[c])) r.emplace_back(c, v[c]);
      ortho.append_row(r);
    }
    (arity == 2 ? d.relations2 : d.relations3) = rref(ortho).matrix;
  }
  d.relations2 = drop_zero_rows(d.relations2);
  d.relations3 = drop_zero_rows(d.relations3);
  return d;
}

long koszul_dual_dim(const BinaryQuadraticProtoperad& p, int n, int rho) {
  if (n < 1 || rho < 1) throw std::invalid_argument("koszul_dual_dim: n, rho >= 1");
  RationalMatrix d = bar::proto_bar_differential(p, n, rho);
  return d.cols() - rank(d);
}

KoszulVerdict check_koszul(const BinaryQuadraticProtoperad& p, int max_arity,
                           int bar_cross_check_arity, const CheckOptions& opts) {
  if (max_arity < 2) throw std::invalid_argument("check_koszul: max_arity >= 2");
  int count = max_arity - 1;
  std::vector<ArityReport> reports(count);
  parallel_for(count, [&](int idx) {
    int n = idx + 2;
    ArityReport rep;
    rep.n = n;
    LabeledAlgebra A = build_algebra(p, n);
    rep.certificate =
        quad::certify_koszul_search(A.algebra, opts.order_budget, opts.seed);
    rep.status = rep.certificate.status;
    rep.order_index = rep.certificate.witness_index;
    const quad::OrderAttempt& att = rep.certificate.best();
    rep.rule_count = att.rule_count;
    rep.critical_count = att.report.critical_count;
    try {
      rep.hilbert = quad::koszul_numerical_check(A.algebra, opts.hilbert_degree)
                        ? HilbertStatus::ok
                        : HilbertStatus::failed;
    } catch (const quad::DimensionsUnavailable&) {
      rep.hilbert = HilbertStatus::unavailable;
    }
    if (n <= bar_cross_check_arity) {
      BarCrossCheck bc;
      bc.n = n;
      bc.max_weight = opts.bar_max_weight;
      for (int rho = 2; rho <= opts.bar_max_weight; ++rho) {
        bar::ChainComplex conn = bar::connected_bar_component(A, rho);
        bar::HomologyReport h = bar::homology_ranks(conn);
        for (int d = 1; d < rho; ++d)
          if (h.dims[d] != 0) bc.concentrated = false;
        bc.top_homology.push_back(h.dims[rho]);
        bar::ChainComplex norm = bar::normalized_bar_complex(p, n, rho);
        for (int d = 1; d <= rho; ++d)
          if (static_cast<int>(conn.labels[d].size()) !=
              static_cast<int>(norm.labels[d].size()))
            bc.dims_agree = false;
      }
      rep.bar = bc;
    }
    reports[idx] = std::move(rep);
  });

  KoszulVerdict v;
  v.reports = std::move(reports);
  v.certified = true;
  v.through_arity = max_arity;
  for (const ArityReport& rep : v.reports) {
    // the Hilbert identity is a consistency check: a failed check blocks the
    // verdict, an unverifiable one is only recorded
    bool ok = rep.status == quad::CertStatus::PBWKoszul &&
              rep.hilbert != HilbertStatus::failed &&
              (!rep.bar || (rep.bar->concentrated && rep.bar->dims_agree));
    if (!ok) {
      v.certified = false;
      v.inconclusive_at = rep.n;
      v.through_arity = rep.n - 1;
      break;
    }
  }
  return v;
}

}  // namespace pkit::proto
