#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "markedgroups/group.hpp"
#include "markedgroups/marked.hpp"
#include "markedgroups/words.hpp"

namespace mg {

/// One implication: (all antecedent words = 1) -> (some consequent word = 1).
/// Equations u = v are stored as u v^-1; variable equalities are equations too.
struct Clause {
    std::vector<Word> antecedent;
    std::vector<Word> consequent;
};

/// forall x1..xv : clause ; clause ; ...
struct UniversalSentence {
    std::string name;
    std::vector<std::string> variables;
    std::vector<Clause> clauses;

    int arity() const { return static_cast<int>(variables.size()); }
    std::string to_text() const;
};

/// Parses `forall x y : (x^2=1 & y^2=1) -> (x=1 | y=1 | x=y)`. Several clauses
/// may be separated by ';'. Anything outside this clause shape (existential
/// quantifiers, negation, nesting) is rejected with InputError.
UniversalSentence parse_sentence(std::string_view text);

namespace sentences {
inline constexpr const char* kLibraryVersion = "sentence-library/1";
/// forall x,y (x^2 = y^2 = 1 -> x = 1 or y = 1 or x = y)
UniversalSentence unique_involution();
/// forall x (x^p = 1 -> x = 1)
UniversalSentence torsion_free(int p);
/// forall x (1 = 1)
UniversalSentence tautology();
}  // namespace sentences

/// Library name (`unique-involution`, `torsion-free:p`, `tautology`) or text.
UniversalSentence resolve_sentence(std::string_view name_or_text);

struct ModelCheck {
    bool holds = true;
    std::optional<std::vector<Element>> counterexample;
    std::size_t failed_clause = 0;
    std::uint64_t tuples_checked = 0;
};

/// Exhaustive check over |G|^v tuples in element order; first counterexample.
ModelCheck holds(const Group& g, const UniversalSentence& sigma);
/// Check over tuples drawn from the radius-R ball of the standard marking.
ModelCheck holds_bounded(const Group& g, const UniversalSentence& sigma, int radius);
/// Check over tuples drawn from an explicit domain (sorted, deterministic).
ModelCheck holds_on(const Group& g, const UniversalSentence& sigma, std::span<const Element> domain);

struct EventualTruth {
    std::vector<std::int64_t> indices;
    std::vector<bool> truth;
    std::vector<std::int64_t> failures;
    bool all_true = false;
    /// True on a nonempty tail ending at the window end.
    bool cofinite_in_window = false;
    std::optional<std::int64_t> true_from;
};

EventualTruth eventual_truth(const SequenceSpec& family, const UniversalSentence& sigma);

struct Theorem3Report {
    bool consistent = true;
    LimitVerdict limit;
    struct Row {
        std::string sentence;
        bool true_on_window = false;
        bool checked_on_limit = false;
        ModelCheck limit_check;
    };
    std::vector<Row> rows;
};

/// For each sentence true on the whole window, the limit must show no
/// counterexample in its radius-R ball. Throws NotStabilized upstream and
/// InputError when the limit does not match the sequence at lambda.
Theorem3Report theorem3_instance(const SequenceSpec& seq, const MarkedGroup& limit,
                                 const std::vector<UniversalSentence>& sentences, int radius, int lambda);

}  // namespace mg
