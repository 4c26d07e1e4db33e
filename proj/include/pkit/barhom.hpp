#ifndef PKIT_BARHOM_HPP
#define PKIT_BARHOM_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pkit/matrix.hpp"
#include "pkit/protoperad.hpp"
#include "pkit/quadalg.hpp"
#include "pkit/walls.hpp"

namespace pkit::bar {

struct NotAComplex : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TruncationExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One weight at a time; the bar constructions split by weight because the
// relations are homogeneous.
struct ChainComplex {
  int weight = 0;
  std::vector<std::vector<std::string>> labels;  // labels[d], d = 0..max_degree
  // boundary[d]: C_d -> C_{d-1}; boundary[0] has zero rows.
  std::vector<RationalMatrix> boundary;

  int max_degree() const { return static_cast<int>(labels.size()) - 1; }
  int dim(int d) const {
    return d >= 0 && d <= max_degree() ? static_cast<int>(labels[d].size()) : 0;
  }
};

// Checks consecutive composites vanish exactly; throws NotAComplex.
void verify_complex(const ChainComplex& c);

struct HomologyReport {
  int weight = 0;
  std::vector<int> dims;  // per degree
};

HomologyReport homology_ranks(const ChainComplex& c);

struct Limits {
  int max_ground = 6;
  int max_weight = 4;
};

// Bases of A_w for w <= max_degree together with a reduction map onto them.
// Prefers a confluent rewrite system (normal words); falls back to
// relation-ideal row reduction.
struct GradedBasisData {
  quad::QuadraticAlgebra algebra;
  bool via_rs = false;
  quad::RewriteSystem rs;
  std::vector<std::vector<quad::Word>> words;  // per degree
  std::vector<std::map<quad::Word, int>> index;
  std::vector<std::map<quad::Word, quad::LinComb>> pivot_expansion;

  quad::LinComb reduce(const quad::Word& w) const;
  int degree_dim(int d) const { return static_cast<int>(words[d].size()); }
};

GradedBasisData make_graded_basis(const quad::QuadraticAlgebra& a, int max_degree);

// Reduced bar complex of `a` restricted to total weight rho: degree p spans
// p-fold tensors of positive-degree basis elements with weights summing to
// rho; differential is the alternating sum of adjacent multiplications.
ChainComplex bar_alg_complex(const quad::QuadraticAlgebra& a, int rho,
                             const Limits& lim = {});

// Partition of 1..n generated by the index pairs appearing in the factors,
// completed by singletons.
walls::Partition partition_split(const proto::LabeledAlgebra& A,
                                 const std::vector<quad::Word>& factors);

// Direct summand of bar_alg_complex(A.algebra, rho) on labels whose
// partition_split is the one-block partition.
ChainComplex connected_bar_component(const proto::LabeledAlgebra& A, int rho,
                                     const Limits& lim = {});

// Normalized simplicial bar construction N(P^sh)(1..n) in weight rho: degree
// p is spanned by p-level walls with bricks labeled by weight components of
// P; the differential merges adjacent levels.
ChainComplex normalized_bar_complex(const proto::BinaryQuadraticProtoperad& p,
                                    int n, int rho, const Limits& lim = {});

// Bar complex of the protoperad in weight rho: degree r is spanned by
// connected walls with r weighted bricks; the differential contracts
// admissible adjacent brick pairs with Koszul signs.
ChainComplex proto_bar_complex(const proto::BinaryQuadraticProtoperad& p, int n,
                               int rho, const Limits& lim = {});

// Top-weight differential Bar_(rho)^[rho] -> Bar_(rho-1)^[rho]; its kernel is
// the Koszul-dual component.
RationalMatrix proto_bar_differential(const proto::BinaryQuadraticProtoperad& p,
                                      int n, int rho);

// Levelization: degree-r map from the protoperadic bar basis to the
// normalized-bar basis, summing a wall's level decompositions with the
// Koszul signs of reordering the suspended bricks. levelization_maps[r]
// matches the degree-r bases of proto_bar_complex and normalized_bar_complex.
std::vector<RationalMatrix> levelization_maps(
    const proto::BinaryQuadraticProtoperad& p, int n, int rho,
    const Limits& lim = {});

RationalMatrix levelization_matrix(const proto::BinaryQuadraticProtoperad& p,
                                   int n, int rho);

}  // namespace pkit::bar

#endif
