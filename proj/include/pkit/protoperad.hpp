#ifndef PKIT_PROTOPERAD_HPP
#define PKIT_PROTOPERAD_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pkit/matrix.hpp"
#include "pkit/quadalg.hpp"
#include "pkit/walls.hpp"

namespace pkit::proto {

enum class Symmetry { symmetric, antisymmetric };

struct GeneratorSpec {
  std::string name;
  Symmetry symmetry;  // Z/2-action of swapping the two inputs: +1 or -1
};

// Canonical weight-2 wall basis at arity a (a = 2 or 3): a basis element is
// (two-brick connected wall, generator on the bottom brick, generator on the
// top brick), brick inputs ascending. The wall's canonical numbering puts the
// bottom brick first.
struct Weight2Basis {
  int arity = 0;
  int m = 0;  // generator count
  std::vector<walls::Wall> wall_list;

  int dim() const { return static_cast<int>(wall_list.size()) * m * m; }
  int index(int wall, int bottom_gen, int top_gen) const {
    return (wall * m + bottom_gen) * m + top_gen;
  }
  int wall_of(int basis_index) const { return basis_index / (m * m); }
  int bottom_of(int basis_index) const { return (basis_index / m) % m; }
  int top_of(int basis_index) const { return basis_index % m; }
  int find_wall(const walls::Wall& w) const;
};

Weight2Basis weight2_basis(int arity, int m);

// One term of a relation vector, as read from input: brick lists may be in
// either input order (a descending pair on an antisymmetric generator absorbs
// a sign during normalization).
struct RelationTerm {
  std::vector<int> bottom_brick;
  std::vector<int> top_brick;
  int bottom_gen = 0;
  int top_gen = 0;
  Rational coeff;
};

struct BinaryQuadraticProtoperad {
  std::vector<GeneratorSpec> generators;
  // Row spaces in the canonical weight-2 bases at arity 2 and 3, stored in
  // rref and closed under the symmetric-group action (the input vectors
  // generate the relation sub-S-module; its arity-wise linear span is what
  // every construction here consumes).
  RationalMatrix relations2;
  RationalMatrix relations3;

  int num_generators() const { return static_cast<int>(generators.size()); }
};

BinaryQuadraticProtoperad make_protoperad(
    std::vector<GeneratorSpec> generators,
    const std::vector<std::vector<RelationTerm>>& relations2,
    const std::vector<std::vector<RelationTerm>>& relations3);

// Action of a permutation of 1..arity on the weight-2 basis: relabel bricks,
// each antisymmetric generator whose inputs land in descending order
// contributes -1. Returns (basis index, sign).
std::pair<int, int> weight2_act(const Weight2Basis& basis,
                                const std::vector<GeneratorSpec>& gens,
                                const std::vector<int>& sigma, int basis_index);

// dim F^rho(V)(1..n) = (#connected walls with rho size-2 bricks) * m^rho.
long long free_dim(int num_generators, int n, int rho);

// (Ind V)(S,E) = k[Aut(S)] (x) V(S): dimension n! * dims(n).
Integer ind_dim(const std::function<long long(int)>& dims, int n);

// A(P,n): generators (v_nu)_ij for 1 <= i < j <= n, nu over p.generators,
// listed in the right-lexicographic pair order (so the identity monomial
// order is the default one). Relations: the arity-2 instances r_ij, the
// arity-3 instances r_ijk via the six wall shapes, and the disjoint-pair
// commutators.
struct LabeledAlgebra {
  quad::QuadraticAlgebra algebra;
  int n = 0;
  int m = 0;
  std::vector<std::pair<int, int>> gen_pair;  // per generator id
  std::vector<int> gen_nu;

  int gen_id(int i, int j, int nu) const;
  int num_generators() const { return static_cast<int>(gen_pair.size()); }
};

LabeledAlgebra build_algebra(const BinaryQuadraticProtoperad& p, int n);

// Dual generators (name + "*", same Z/2-type under the invariant pairing);
// relation spaces replaced by orthogonal complements in the weight-2 bases.
BinaryQuadraticProtoperad dual_presentation(const BinaryQuadraticProtoperad& p);

// Kernel rank of the top-weight bar differential at bidegree ((rho),[rho]) on
// the ground set 1..n; see barhom.
long koszul_dual_dim(const BinaryQuadraticProtoperad& p, int n, int rho);

struct BarCrossCheck {
  int n = 0;
  int max_weight = 0;
  bool concentrated = true;     // homology of the connected bar component
  bool dims_agree = true;       // against the normalized bar construction
  std::vector<int> top_homology;  // per weight 2..max_weight
};

enum class HilbertStatus { ok, failed, unavailable };

struct ArityReport {
  int n = 0;
  quad::CertStatus status = quad::CertStatus::Inconclusive;
  int order_index = -1;  // which searched order certified
  long rule_count = 0;
  long critical_count = 0;
  HilbertStatus hilbert = HilbertStatus::unavailable;
  quad::Certificate certificate;
  std::optional<BarCrossCheck> bar;
};

struct KoszulVerdict {
  bool certified = false;
  int through_arity = 0;       // meaningful when certified
  int inconclusive_at = -1;    // smallest failing arity otherwise
  std::vector<ArityReport> reports;  // sorted by n
};

struct CheckOptions {
  int hilbert_degree = 6;
  int order_budget = 8;
  int bar_max_weight = 3;
  unsigned seed = 17;
};

// Certifies A(P,n) for n = 2..max_arity by the rewriting method; for
// n <= bar_cross_check_arity additionally verifies homology concentration of
// the connected bar component. The criterion is one-directional and bounded:
// the verdict never claims more than "certified through arity N".
KoszulVerdict check_koszul(const BinaryQuadraticProtoperad& p, int max_arity,
                           int bar_cross_check_arity,
                           const CheckOptions& opts = {});

}  // namespace pkit::proto

#endif
