#include <random>
#include <set>

#include "dlie_fixture.hpp"
#include "doctest.h"
#include "pkit/quadalg.hpp"

using namespace pkit;
using quad::Word;

namespace {

quad::QuadraticAlgebra xy_nonconfluent() {
  // k<x,y>/(x^2 - yx), generators listed y first so the identity order is y < x
  RationalMatrix rel(0, 4);
  rel.append_row({{quad::word2_col(2, 1, 1), Rational(1)},
                  {quad::word2_col(2, 0, 1), Rational(-1)}});
  return quad::make_algebra({"y", "x"}, rel);
}

quad::QuadraticAlgebra free_algebra(std::vector<std::string> gens) {
  int g = static_cast<int>(gens.size());
  return quad::make_algebra(std::move(gens), RationalMatrix(0, g * g));
}

// degree-d relation-ideal span oracle, written independently of the library's
// graded_dims_by_ideal
long oracle_dim(const quad::QuadraticAlgebra& a, int d) {
  int g = a.num_generators();
  auto words_of = [&](int len) {
    std::vector<Word> out;
    Word w(len, 0);
    if (len == 0) {
      out.push_back({});
      return out;
    }
    while (true) {
      out.push_back(w);
      int i = len - 1;
      while (i >= 0 && w[i] == g - 1) w[i--] = 0;
      if (i < 0) break;
      ++w[i];
    }
    return out;
  };
  auto all = words_of(d);
  if (d < 2) return static_cast<long>(all.size());
  std::map<Word, int> col;
  for (size_t i = 0; i < all.size(); ++i) col[all[i]] = static_cast<int>(i);
  RationalMatrix span(0, static_cast<int>(all.size()));
  for (int pos = 0; pos + 2 <= d; ++pos)
    for (const Word& lu : words_of(pos))
      for (int ri = 0; ri < a.relations.rows(); ++ri) {
        if (a.relations.row(ri).empty()) continue;
        for (const Word& rv : words_of(d - pos - 2)) {
          RationalMatrix::Row row;
          for (const auto& [c, val] : a.relations.row(ri)) {
            Word word = lu;
            word.push_back(c / g);
            word.push_back(c % g);
            word.insert(word.end(), rv.begin(), rv.end());
            row.emplace_back(col.at(word), val);
          }
          span.append_row(row);
        }
      }
  return static_cast<long>(all.size()) - rank(span);
}

std::set<std::pair<int, int>> lhs_set(const quad::RewriteSystem& rs) {
  std::set<std::pair<int, int>> out;
  for (const auto& [lhs, rhs] : rs.rules) out.insert(lhs);
  return out;
}

}  // namespace

TEST_CASE("quadratic dual of the free algebra") {
  auto a = free_algebra({"x"});
  auto d = quad::quadratic_dual(a);
  CHECK(d.generators == std::vector<std::string>{"x*"});
  RationalMatrix full(0, 1);
  full.append_row({{0, Rational(1)}});
  CHECK(row_space_equal(d.relations, full));
  // and back: the double dual has no relations
  auto dd = quad::quadratic_dual(d);
  CHECK(rank(dd.relations) == 0);
}

TEST_CASE("quadratic dual of A(DLie,3) matches the stated relation list") {
  auto a = a_dlie(3);
  auto w3 = quad::quadratic_dual(a);
  // span{x_ij^2, x_ij x_jk + x_jk x_ik, x_ij x_jk + x_ik x_ij,
  //      x_ij x_ik + x_jk x_ij, x_ij x_ik - x_ik x_jk} at i<j<k = 1<2<3,
  // generator ids x12=0, x13=1, x23=2
  auto c = [&](int u, int v) { return quad::word2_col(3, u, v); };
  RationalMatrix expected(0, 9);
  expected.append_row({{c(0, 0), Rational(1)}});
  expected.append_row({{c(1, 1), Rational(1)}});
  expected.append_row({{c(2, 2), Rational(1)}});
  expected.append_row({{c(0, 2), Rational(1)}, {c(2, 1), Rational(1)}});
  expected.append_row({{c(0, 2), Rational(1)}, {c(1, 0), Rational(1)}});
  expected.append_row({{c(0, 1), Rational(1)}, {c(2, 0), Rational(1)}});
  expected.append_row({{c(0, 1), Rational(1)}, {c(1, 2), Rational(-1)}});
  CHECK(row_space_equal(w3.relations, expected));
}

TEST_CASE("quadratic dual is an involution with complementary dimension") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    int g = 2 + static_cast<int>(rng() % 2);
    int rows = static_cast<int>(rng() % (g * g + 1));
    RationalMatrix rel(0, g * g);
    for (int i = 0; i < rows; ++i) {
      RationalMatrix::Row r;
      for (int c = 0; c < g * g; ++c) {
        int v = static_cast<int>(rng() % 5) - 2;
        if (v) r.emplace_back(c, Rational(v));
      }
      rel.append_row(r);
    }
    std::vector<std::string> names;
    for (int i = 0; i < g; ++i) names.push_back("g" + std::to_string(i));
    auto a = quad::make_algebra(names, rel);
    auto d = quad::quadratic_dual(a);
    CHECK(rank(a.relations) + rank(d.relations) == g * g);
    CHECK(row_space_equal(quad::quadratic_dual(d).relations, a.relations));
  }
}

TEST_CASE("rewrite system of W^3 under the default order") {
  auto w3 = quad::quadratic_dual(a_dlie(3));
  auto rs = quad::derive_rewrite_system(w3, quad::identity_order(3));
  // x12=0 < x13=1 < x23=2
  std::set<std::pair<int, int>> expected = {{0, 0}, {1, 1}, {2, 2}, {2, 1},
                                            {1, 0}, {2, 0}, {1, 2}};
  CHECK(lhs_set(rs) == expected);
  // x_jk x_ik -> -x_ij x_jk
  CHECK(*rs.rule(2, 1) == quad::lincomb_single({0, 2}, Rational(-1)));
  // x_ik x_ij -> -x_ij x_jk
  CHECK(*rs.rule(1, 0) == quad::lincomb_single({0, 2}, Rational(-1)));
  // x_jk x_ij -> -x_ij x_ik
  CHECK(*rs.rule(2, 0) == quad::lincomb_single({0, 1}, Rational(-1)));
  // x_ik x_jk -> x_ij x_ik  (the one rule without a sign change)
  CHECK(*rs.rule(1, 2) == quad::lincomb_single({0, 1}, Rational(1)));

  // span{lhs - rhs} equals the relation row space
  int g = 3;
  RationalMatrix span(0, g * g);
  for (const auto& rule : rs.rule_list()) {
    RationalMatrix::Row row;
    row.emplace_back(quad::word2_col(g, rule.lhs[0], rule.lhs[1]), Rational(1));
    for (const auto& t : rule.rhs)
      row.emplace_back(quad::word2_col(g, t.word[0], t.word[1]), -t.coeff);
    span.append_row(row);
  }
  CHECK(row_space_equal(span, w3.relations));
}

TEST_CASE("rewrite system of A(DLie,3)") {
  auto a = a_dlie(3);
  auto rs = quad::derive_rewrite_system(a, quad::identity_order(3));
  std::set<std::pair<int, int>> expected = {{2, 1}, {2, 0}};
  CHECK(lhs_set(rs) == expected);
  // x23 x13 -> x12 x23 - x13 x12
  quad::LinComb r1 = {{{0, 2}, Rational(1)}, {{1, 0}, Rational(-1)}};
  std::sort(r1.begin(), r1.end(),
            [](const quad::Term& a, const quad::Term& b) { return a.word < b.word; });
  CHECK(*rs.rule(2, 1) == r1);
  // x23 x12 -> x13 x23 + x12 x13 (solving the second relation for its
  // largest word keeps both plus signs)
  quad::LinComb r2 = {{{1, 2}, Rational(1)}, {{0, 1}, Rational(1)}};
  std::sort(r2.begin(), r2.end(),
            [](const quad::Term& a, const quad::Term& b) { return a.word < b.word; });
  CHECK(*rs.rule(2, 0) == r2);
}

TEST_CASE("single-generator rewrite system") {
  RationalMatrix rel(0, 1);
  rel.append_row({{0, Rational(1)}});
  auto a = quad::make_algebra({"x"}, rel);
  auto rs = quad::derive_rewrite_system(a, quad::identity_order(1));
  REQUIRE(rs.rules.size() == 1);
  CHECK(rs.rule(0, 0)->empty());
  CHECK(quad::normal_form(rs, Word{0, 0, 0}).empty());
  CHECK(quad::critical_monomials(rs) == std::vector<Word>{{0, 0, 0}});
  CHECK(quad::check_confluence(rs).confluent);
  auto h = quad::hilbert_coeffs(rs, 4);
  CHECK(h == std::vector<Integer>{1, 1, 0, 0, 0});
}

TEST_CASE("normal forms in W^3") {
  auto rs = quad::derive_rewrite_system(quad::quadratic_dual(a_dlie(3)),
                                        quad::identity_order(3));
  CHECK(quad::normal_form(rs, Word{2, 1}) ==
        quad::lincomb_single({0, 2}, Rational(-1)));
  CHECK(quad::normal_form(rs, Word{0, 1}) == quad::lincomb_single({0, 1}));
}

TEST_CASE("critical monomials pair rules through the middle letter") {
  auto rs = quad::derive_rewrite_system(quad::quadratic_dual(a_dlie(3)),
                                        quad::identity_order(3));
  auto crits = quad::critical_monomials(rs);
  std::set<Word> cset(crits.begin(), crits.end());
  CHECK(cset.count({2, 2, 1}));  // x23^2 x13
  CHECK(cset.count({1, 1, 0}));  // x13^2 x12
  // brute-force pairing oracle
  std::set<Word> oracle;
  auto rules = rs.rule_list();
  for (const auto& r1 : rules)
    for (const auto& r2 : rules)
      if (r1.lhs[1] == r2.lhs[0]) oracle.insert({r1.lhs[0], r1.lhs[1], r2.lhs[1]});
  CHECK(cset == oracle);
}

TEST_CASE("confluence of W^n for n = 3,4,5") {
  for (int n = 3; n <= 5; ++n) {
    auto wn = quad::quadratic_dual(a_dlie(n));
    auto rs = quad::derive_rewrite_system(wn, quad::identity_order(wn.num_generators()));
    auto rep = quad::check_confluence(rs);
    CHECK_MESSAGE(rep.confluent, "W^" << n);
    CHECK(rep.critical_count > 0);
  }
}

TEST_CASE("the negative control x^2 - yx is not confluent under y < x") {
  auto a = xy_nonconfluent();
  auto rs = quad::derive_rewrite_system(a, quad::identity_order(2));
  REQUIRE(rs.rules.size() == 1);
  auto rep = quad::check_confluence(rs, &a.generators);
  CHECK_FALSE(rep.confluent);
  REQUIRE(rep.failures.size() == 1);
  CHECK(rep.failures[0].critical == Word{1, 1, 1});  // x^3
  // the two distinct normal forms: y^2 x and xyx
  std::set<std::string> forms(rep.failures[0].normal_forms.begin(),
                              rep.failures[0].normal_forms.end());
  CHECK(forms.count("y.y.x"));
  CHECK(forms.count("x.y.x"));
  // under the reversed order x < y the single rule yx -> x^2 has no overlap
  auto rs2 = quad::derive_rewrite_system(a, quad::reversed_order(2));
  CHECK(quad::check_confluence(rs2).confluent);
}

TEST_CASE("hilbert coefficients") {
  auto rs3 = quad::derive_rewrite_system(quad::quadratic_dual(a_dlie(3)),
                                         quad::identity_order(3));
  CHECK(quad::hilbert_coeffs(rs3, 6) ==
        std::vector<Integer>{1, 3, 2, 0, 0, 0, 0});

  auto rsa = quad::derive_rewrite_system(a_dlie(3), quad::identity_order(3));
  CHECK(quad::hilbert_coeffs(rsa, 6) ==
        std::vector<Integer>{1, 3, 7, 15, 31, 63, 127});

  auto bad = quad::derive_rewrite_system(xy_nonconfluent(), quad::identity_order(2));
  CHECK_THROWS_AS(quad::hilbert_coeffs(bad, 3), quad::NotConfluent);
}

TEST_CASE("hilbert coefficients agree with the ideal-span oracle") {
  for (const auto& a : {a_dlie(3), quad::quadratic_dual(a_dlie(3))}) {
    auto rs = quad::derive_rewrite_system(a, quad::identity_order(a.num_generators()));
    REQUIRE(quad::check_confluence(rs).confluent);
    auto h = quad::hilbert_coeffs(rs, 3);
    for (int d = 0; d <= 3; ++d) CHECK(h[d] == oracle_dim(a, d));
  }
}

TEST_CASE("normal form is strategy independent on confluent systems") {
  auto w4 = quad::quadratic_dual(a_dlie(4));
  auto rs = quad::derive_rewrite_system(w4, quad::identity_order(6));
  REQUIRE(quad::check_confluence(rs).confluent);
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    int len = 1 + static_cast<int>(rng() % 5);
    Word w;
    for (int i = 0; i < len; ++i) w.push_back(static_cast<int>(rng() % 6));
    auto l = quad::normal_form(rs, w, quad::Strategy::leftmost);
    auto r = quad::normal_form(rs, w, quad::Strategy::rightmost);
    CHECK(l == r);
  }
}

TEST_CASE("graded dims fall back to ideal spans on non-confluent systems") {
  // k<x,y>/(x^2 - yx, xy): neither generator order yields a confluent system
  RationalMatrix rel(0, 4);
  rel.append_row({{quad::word2_col(2, 1, 1), Rational(1)},
                  {quad::word2_col(2, 0, 1), Rational(-1)}});
  rel.append_row({{quad::word2_col(2, 1, 0), Rational(1)}});
  auto a = quad::make_algebra({"y", "x"}, rel);
  for (const auto& o : {quad::identity_order(2), quad::reversed_order(2)}) {
    auto rs = quad::derive_rewrite_system(a, o);
    CHECK_FALSE(quad::check_confluence(rs).confluent);
  }
  auto dims = quad::graded_dims(a, 3);
  auto by_ideal = quad::graded_dims_by_ideal(a, 3);
  REQUIRE(dims.size() == by_ideal.size());
  for (size_t d = 0; d < dims.size(); ++d) CHECK(dims[d] == by_ideal[d]);
  for (int d = 0; d <= 3; ++d) CHECK(by_ideal[d] == oracle_dim(a, d));
  // no exceptions either way
  quad::koszul_numerical_check(a, 4);
}

TEST_CASE("Koszul numerical check") {
  CHECK(quad::koszul_numerical_check(a_dlie(2), 6));
  CHECK(quad::koszul_numerical_check(a_dlie(3), 6));
  // perturbed fixture: dropping one relation of W^3 breaks the identity
  auto w3 = quad::quadratic_dual(a_dlie(3));
  RationalMatrix fewer(0, 9);
  for (int i = 0; i + 1 < w3.relations.rows(); ++i)
    fewer.append_row(w3.relations.row(i));
  auto perturbed = quad::make_algebra(w3.generators, fewer);
  CHECK_FALSE(quad::koszul_numerical_check(perturbed, 6));
}

TEST_CASE("certify_koszul") {
  auto w3 = quad::quadratic_dual(a_dlie(3));
  auto cert = quad::certify_koszul(w3, {quad::identity_order(3)});
  CHECK(cert.status == quad::CertStatus::PBWKoszul);

  for (int n = 2; n <= 5; ++n) {
    auto c = quad::certify_koszul_search(a_dlie(n), 8);
    CHECK_MESSAGE(c.status == quad::CertStatus::PBWKoszul, "A(DLie," << n << ")");
  }

  // degenerate inputs: no relations and full relations are both PBW
  auto free2 = free_algebra({"a", "b"});
  CHECK(quad::certify_koszul_search(free2, 0).status == quad::CertStatus::PBWKoszul);
  auto full2 = quad::quadratic_dual(free2);
  CHECK(rank(full2.relations) == 4);
  CHECK(quad::certify_koszul_search(full2, 0).status == quad::CertStatus::PBWKoszul);

  // the pinned failing order is reported inconclusive, with the per-order
  // outcomes recorded
  auto a = xy_nonconfluent();
  auto pinned = quad::certify_koszul(a, {quad::identity_order(2)});
  CHECK(pinned.status == quad::CertStatus::Inconclusive);
  CHECK(pinned.attempts.size() == 1);
  CHECK_FALSE(pinned.attempts[0].report.confluent);
  auto search = quad::certify_koszul_search(a, 0);
  CHECK(search.status == quad::CertStatus::PBWKoszul);
  CHECK(search.attempts.size() == 2);  // y<x failed, x<y certified
}
