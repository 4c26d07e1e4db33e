#ifndef PKIT_TESTS_DLIE_FIXTURE_HPP
#define PKIT_TESTS_DLIE_FIXTURE_HPP

#include <map>
#include <string>
#include <vector>

#include "pkit/quadalg.hpp"

// The explicit presentation of A(DLie,n): generators x_ij for i<j in the
// right-lexicographic order, relations
//   x_ij x_jk - x_jk x_ik - x_ik x_ij,
//   x_jk x_ij - x_ik x_jk - x_ij x_ik   for i<j<k, and
//   [x_ab, x_uv]                        for disjoint pairs.
// Written from scratch so module-level tests can cross-check build_algebra.
inline pkit::quad::QuadraticAlgebra a_dlie(int n) {
  using namespace pkit;
  std::vector<std::pair<int, int>> pairs;
  for (int j = 2; j <= n; ++j)
    for (int i = 1; i < j; ++i) pairs.emplace_back(i, j);
  std::map<std::pair<int, int>, int> id;
  std::vector<std::string> names;
  for (size_t k = 0; k < pairs.size(); ++k) {
    id[pairs[k]] = static_cast<int>(k);
    names.push_back("x" + std::to_string(pairs[k].first) +
                    std::to_string(pairs[k].second));
  }
  int g = static_cast<int>(pairs.size());
  auto col = [&](std::pair<int, int> a, std::pair<int, int> b) {
    return quad::word2_col(g, id.at(a), id.at(b));
  };
  RationalMatrix rel(0, g * g);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        rel.append_row({{col({i, j}, {j, k}), Rational(1)},
                        {col({j, k}, {i, k}), Rational(-1)},
                        {col({i, k}, {i, j}), Rational(-1)}});
        rel.append_row({{col({j, k}, {i, j}), Rational(1)},
                        {col({i, k}, {j, k}), Rational(-1)},
                        {col({i, j}, {i, k}), Rational(-1)}});
      }
  for (size_t x = 0; x < pairs.size(); ++x)
    for (size_t y = x + 1; y < pairs.size(); ++y) {
      auto [a, b] = pairs[x];
      auto [u, v] = pairs[y];
      if (a == u || a == v || b == u || b == v) continue;
      rel.append_row({{col(pairs[x], pairs[y]), Rational(1)},
                      {col(pairs[y], pairs[x]), Rational(-1)}});
    }
  return quad::make_algebra(std::move(names), rel);
}

#endif
