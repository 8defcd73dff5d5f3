#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "markedgroups/group.hpp"
#include "markedgroups/marked.hpp"
#include "markedgroups/words.hpp"

namespace mg {

/// One index of a lifted sequence: a marked cover H_i with S_i = (.., t_i),
/// a central subgroup K_i of H_i, and the quotient H_i/K_i marked by the
/// projection of S_i (the last entry projects to the identity).
struct LiftedIndex {
    std::int64_t n = 0;
    MarkedGroup cover;
    std::vector<Element> kernel;  // K_i, canonical elements of the cover
    MarkedGroup quotient;
};

struct LiftedSequence {
    std::string name;
    std::vector<std::int64_t> indices;
    std::function<LiftedIndex(std::int64_t)> make;
    /// Candidate limit (H,S) of the covers, marked compatibly.
    std::optional<MarkedGroup> limit_cover;
    /// Candidate limit of the quotients, marking ending in the identity.
    std::optional<MarkedGroup> quotient_limit;

    SequenceSpec covers() const;
    SequenceSpec quotients() const;
};

/// Builds the index from a marked cover and its central subgroup.
LiftedIndex lift_index(std::int64_t n, MarkedGroup cover, std::vector<Element> kernel);

namespace lifts {
/// sd4(n) marked (x, y, t) with t = (2, 2^{n-2}); K_n = <t>; quotient Q_{2^n}.
LiftedSequence quaternion(std::vector<std::int64_t> indices);
/// sd4(n) marked (x, y, t) with K_n the full center.
LiftedSequence quaternion_full_center(std::vector<std::int64_t> indices);
/// D_{4n} marked (r, s, r^n) with K_n = <r^n>; quotient D_{2n}.
LiftedSequence dihedral(std::vector<std::int64_t> indices);
/// Constant cover with the given central subgroup.
LiftedSequence constant(const MarkedGroup& cover, std::vector<Element> kernel, std::vector<std::int64_t> indices);
}  // namespace lifts

struct KernelIdentification {
    int lambda = 0;
    std::vector<std::int64_t> tail;
    std::int64_t covers_stable_at = 0;
    std::int64_t quotients_stable_at = 0;
    /// Words of length <= lambda with w(S_i) in K_i on the whole tail. The
    /// empty word is included.
    std::vector<Word> m_approx;
    /// Values of m_approx on the limit cover, sorted.
    std::vector<Element> k_approx;
    bool quotient_consistent = false;  // M_i = Rel(H_i/K_i, T_i+1) on the tail
    bool preimage_consistent = false;  // m_approx = {w : w(S) in k_approx}
    bool inverse_closed = false;
    bool subgroup = false;
    bool central = false;
};

/// Throws NotStabilized when covers or quotients do not stabilize at lambda,
/// InputError when the sequence has no limit cover.
KernelIdentification kernel_identification(const LiftedSequence& lifted, int lambda, std::size_t tail_length = 0);

struct CentralityRow {
    Word v;
    Word commutator;
    int radius = 0;                          // |[w,v]|
    bool relation_on_tail = false;           // [w(S_i), v(S_i)] = 1 for every tail index
    bool relation_on_limit = false;          // [w(S), v(S)] = 1
    std::optional<std::int64_t> balls_isomorphic_from;  // first index with B_R(H_i,S_i) = B_R(H,S) onward
};

struct CentralityReport {
    Word w;
    std::vector<std::int64_t> tail;
    bool w_in_kernel = false;  // w(S_i) in K_i on the whole tail
    std::vector<CentralityRow> rows;
    bool central() const;
};

CentralityReport centrality_transfer_check(const LiftedSequence& lifted, const Word& w,
                                           const std::vector<Word>& test_words, int lambda);

struct CenterCheck {
    std::string group;
    std::vector<Element> computed;
    std::vector<Element> expected;  // (0,0), (2,0), (0,M/2), (2,M/2)
    bool bounded = false;
    int bound = 0;
    bool match = false;
};

/// sd4(n) or limitH(l,k): brute-force center against the four-element
/// formula. Infinite groups are searched over |v_i| <= bound.
CenterCheck center_formula_check(const Group& g, int bound = 4);

struct CaseReport {
    int index = 0;  // 1..5
    std::vector<Element> kernel;
    std::string quotient;
    InvolutionCensus census;
    /// Named involutions, in cover coordinates, and whether each squares to
    /// the identity in the quotient without being the identity.
    std::vector<Element> witnesses;
    std::vector<bool> witness_ok;
    std::size_t claimed_minimum = 0;
    bool claim_holds = false;
    bool unique_involution = false;
    std::string note;
};

struct CaseAnalysis {
    int l = 0;
    int k = 0;
    std::string cover;
    std::vector<CaseReport> cases;
    /// 1-based index of the unique-involution case when exactly one exists.
    int unique_case = 0;
};

CaseAnalysis case_analysis(int l, int k);

struct AbelianLimitCheck {
    int k = 0;
    int lambda = 0;
    std::optional<LimitVerdict> verdict;  // empty when the window did not stabilize
    std::string sequence;
    std::string limit;
    bool match() const { return verdict && verdict->match; }
};

/// (Z_{2^n}, (g, g^{2^{n-k}})) against (Z + Z_{2^k}, (a1, t)). k = 0 selects
/// the single-generator sequence (Z_{2^n}, (g)) against (Z, (a1)).
AbelianLimitCheck abelian_limit_check(int k, std::vector<std::int64_t> window, int lambda);

struct Theorem1Report {
    int lambda = 0;
    LimitVerdict covers;
    std::int64_t quotients_stable_at = 0;
    KernelIdentification kernel;
    std::string quotient_of_limit;  // limit cover modulo k_approx
    bool quotient_matches_tail = false;
    std::optional<bool> matches_named_limit;
    std::optional<Word> witness;
    bool consistent() const;
};

Theorem1Report theorem1_instance(const LiftedSequence& lifted, int lambda, std::size_t tail_length = 0);

}  // namespace mg
