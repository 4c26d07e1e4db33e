#ifndef PKIT_QUADALG_HPP
#define PKIT_QUADALG_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pkit/matrix.hpp"
#include "pkit/rational.hpp"

namespace pkit::quad {

using Word = std::vector<int>;  // generator ids

struct Term {
  Word word;
  Rational coeff;
  bool operator==(const Term& o) const { return word == o.word && coeff == o.coeff; }
};

// sorted by word, nonzero coefficients
using LinComb = std::vector<Term>;

LinComb lincomb_add(const LinComb& a, const LinComb& b);
LinComb lincomb_scale(const LinComb& a, const Rational& c);
LinComb lincomb_single(const Word& w, const Rational& c = Rational(1));
std::string lincomb_str(const LinComb& c, const std::vector<std::string>& gens);

// Quadratic presentation: T(generators) / <row space of `relations`>,
// columns of `relations` index degree-2 words g_a g_b as a*g + b. The matrix
// is kept in reduced row echelon form.
struct QuadraticAlgebra {
  std::vector<std::string> generators;
  RationalMatrix relations;

  int num_generators() const { return static_cast<int>(generators.size()); }
};

QuadraticAlgebra make_algebra(std::vector<std::string> generators,
                              const RationalMatrix& relation_rows);

inline int word2_col(int g, int a, int b) { return a * g + b; }

// Degree-then-left-lexicographic word order on generator ranks.
struct MonomialOrder {
  std::vector<int> rank;  // rank[gen] is a bijection onto 0..g-1

  bool gen_less(int a, int b) const { return rank[a] < rank[b]; }
  bool word_less(const Word& a, const Word& b) const;
};

MonomialOrder identity_order(int g);
MonomialOrder reversed_order(int g);

struct RewriteRule {
  Word lhs;      // degree-2 word, strictly greater than every rhs word
  LinComb rhs;
};

struct RewriteSystem {
  int num_generators = 0;
  MonomialOrder order;
  std::map<std::pair<int, int>, LinComb> rules;

  bool reducible(int a, int b) const { return rules.count({a, b}) != 0; }
  const LinComb* rule(int a, int b) const;
  std::vector<RewriteRule> rule_list() const;
};

struct ConfluenceFailure {
  Word critical;
  std::string critical_str;
  std::vector<std::string> normal_forms;  // the distinct results reached
  std::vector<std::vector<std::string>> traces;  // one reduction trace per strategy
};

struct ConfluenceReport {
  bool confluent = true;
  long critical_count = 0;
  std::vector<ConfluenceFailure> failures;
};

struct NotConfluent : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionsUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Generators are replaced by duals (name + "*"); relations by the orthogonal
// complement under <g_a g_b, g_c* g_d*> = delta_ac delta_bd.
QuadraticAlgebra quadratic_dual(const QuadraticAlgebra& a);

// Row-reduces the relations against the order's word ranking so each relation
// is solved for its largest word; rules are lhs -> lhs - relation.
RewriteSystem derive_rewrite_system(const QuadraticAlgebra& a,
                                    const MonomialOrder& o);

enum class Strategy { leftmost, rightmost, largest_word_first };

// Exhaustive rewriting; `leftmost` is the default reduction strategy.
LinComb normal_form(const RewriteSystem& rs, const Word& w,
                    Strategy s = Strategy::leftmost,
                    std::vector<std::string>* trace = nullptr,
                    const std::vector<std::string>* gen_names = nullptr);
LinComb normal_form(const RewriteSystem& rs, const LinComb& c,
                    Strategy s = Strategy::leftmost);

// Words uvw of length 3 with uv and vw both rule left-hand sides.
std::vector<Word> critical_monomials(const RewriteSystem& rs);

// Reduces every critical monomial under the leftmost, rightmost and
// largest-word-first strategies; confluent iff all agree everywhere.
ConfluenceReport check_confluence(const RewriteSystem& rs,
                                  const std::vector<std::string>* gen_names = nullptr);

// Coefficient d counts length-d words with no lhs factor; valid as a
// dimension count only on confluent systems (throws NotConfluent otherwise).
std::vector<Integer> hilbert_coeffs(const RewriteSystem& rs, int max_degree);

// dim A_d for d <= max_degree, by rank of the degree-d relation-ideal span.
// Independent of any rewriting; cost grows as g^d.
std::vector<long> graded_dims_by_ideal(const QuadraticAlgebra& a, int max_degree);

// Graded dimensions through degree D, preferring a confluent rewrite system
// (tries `orders`, then the identity order) and falling back to ideal spans.
std::vector<Integer> graded_dims(const QuadraticAlgebra& a, int max_degree);

// Sum_{i+j=d} (-1)^j h_A(i) h_{A!}(j) == [d = 0] for all d <= max_degree.
bool koszul_numerical_check(const QuadraticAlgebra& a, int max_degree);

enum class CertStatus { PBWKoszul, Inconclusive };

struct OrderAttempt {
  MonomialOrder order;
  ConfluenceReport report;
  std::vector<RewriteRule> rules;
  long rule_count = 0;
};

struct Certificate {
  CertStatus status = CertStatus::Inconclusive;
  int witness_index = -1;  // index into attempts when PBWKoszul
  std::vector<OrderAttempt> attempts;

  const OrderAttempt& best() const;
};

// Tries the given orders in sequence; PBWKoszul on the first confluent one.
Certificate certify_koszul(const QuadraticAlgebra& a,
                           const std::vector<MonomialOrder>& orders);

// Default search: identity order, its reverse, then `budget` seeded random
// generator orders.
Certificate certify_koszul_search(const QuadraticAlgebra& a, int budget,
                                  unsigned seed = 17);

std::string word_str(const Word& w, const std::vector<std::string>& gens);

}  // namespace pkit::quad

#endif
