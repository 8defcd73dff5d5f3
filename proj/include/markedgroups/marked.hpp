#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "markedgroups/group.hpp"
#include "markedgroups/words.hpp"

namespace mg {

enum class GenerationStatus {
    verified,     // finite group, closure equals the whole group
    certified,    // infinite group, radius-8 ball contains every standard generator
    unverified,
};

const char* generation_status_name(GenerationStatus s);

/// A group together with an ordered generating tuple.
class MarkedGroup {
public:
    MarkedGroup(Group group, std::vector<Element> marking, std::string marking_text = {});

    /// Marking text: comma-separated words in the group's named generators,
    /// element tuples `(x;v;t)`, or `1`.
    static MarkedGroup parse(std::string_view group_descriptor, std::string_view marking_text);
    static MarkedGroup parse(const Group& group, std::string_view marking_text);
    /// Marked by the group's own named generators.
    static MarkedGroup standard(const Group& group);

    const Group& group() const { return group_; }
    std::span<const Element> marking() const { return marking_; }
    int rank() const { return static_cast<int>(marking_.size()); }
    const std::string& marking_text() const { return marking_text_; }
    GenerationStatus generation() const { return generation_; }
    /// Names for the free generators, taken from the marking text when each
    /// item is a plain identifier, `s1..sm` otherwise.
    const std::vector<std::string>& letter_names() const { return letter_names_; }

    Element eval(const Word& w) const { return evaluate<Group, Element>(w, group_, marking_); }
    std::string word_text(const Word& w) const { return w.to_named_text(letter_names_); }
    std::string label() const { return group_.descriptor() + " [" + marking_text_ + "]"; }

private:
    Group group_;
    std::vector<Element> marking_;
    std::string marking_text_;
    std::vector<std::string> letter_names_;
    GenerationStatus generation_ = GenerationStatus::unverified;
};

/// Rel_lambda: nonempty reduced words of length <= radius vanishing on the
/// marking, sorted shortlex.
struct RelationBall {
    int rank = 0;
    int radius = 0;
    std::vector<Word> words;

    bool contains(const Word& w) const;
    friend bool operator==(const RelationBall&, const RelationBall&) = default;
};

/// Word budget shared by all enumerations (default 1e8).
std::uint64_t word_budget();
void set_word_budget(std::uint64_t budget);

struct EnumOptions {
    bool use_kernels = true;  // false forces per-element scalar arithmetic
};

/// Level-synchronous enumeration through the batched frontier kernels.
RelationBall rel_ball(const MarkedGroup& mg, int lambda, EnumOptions opts = {});
/// Independent oracle: depth-limited prefix-tree search with plain group
/// arithmetic.
RelationBall rel_ball_bfs(const MarkedGroup& mg, int lambda);
/// Nonempty words of length <= lambda whose value lies in `target` (sorted
/// canonical elements), shortlex order.
std::vector<Word> words_into(const MarkedGroup& mg, int lambda, std::span<const Element> target,
                             EnumOptions opts = {});

/// Shortlex-first word in the symmetric difference, if any.
std::optional<Word> first_difference(const RelationBall& a, const RelationBall& b);

struct Distance {
    int lambda_max = 0;
    /// Largest radius with equal relation balls (exact) or lambda_max (bound).
    int agree_radius = 0;
    bool exact = false;
    std::optional<Word> witness;            // shortlex-least separating word
    std::vector<Word> shortest_witnesses;   // every separating word of minimal length
    /// e^{-agree_radius}: the distance when exact, an upper bound otherwise.
    double value() const;
};

Distance gg_distance(const MarkedGroup& a, const MarkedGroup& b, int lambda_max);

/// Rooted, generator-labelled ball in the marked Cayley graph.
struct BallGraph {
    struct Edge {
        std::uint32_t from;
        std::uint32_t to;
        int label;  // 1-based generator index
    };
    int rank = 0;
    int radius = 0;
    std::vector<Element> vertices;  // vertices[0] is the root
    std::vector<int> depth;
    std::vector<Word> geodesics;  // shortlex-least word reaching each vertex
    std::vector<Edge> edges;

    std::string to_dot(const Group& g) const;
};

BallGraph ball_graph(const MarkedGroup& mg, int radius);
bool ball_isomorphic(const BallGraph& a, const BallGraph& b);

// ---------------------------------------------------------------------------
// Sequences of marked groups over a finite index window.

class NotStabilized : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SequenceSpec {
    std::string name;
    std::function<MarkedGroup(std::int64_t)> make;
    std::vector<std::int64_t> indices;
};

std::vector<std::int64_t> index_window(std::int64_t first, std::int64_t last);

/// Evaluates `{expr}` blocks and bare descriptor arguments in terms of `n`,
/// e.g. `quaternion(n)` or `g,g^{2^(n-2)}`. Supports + - * ^ and parentheses.
std::string instantiate_template(std::string_view text, std::int64_t n);
std::int64_t eval_index_expr(std::string_view expr, std::int64_t n);

/// An empty marking template marks each member by its named generators.
SequenceSpec family_sequence(std::string descriptor_template, std::string marking_template,
                             std::vector<std::int64_t> indices);
SequenceSpec constant_sequence(const MarkedGroup& mg, std::vector<std::int64_t> indices);

std::vector<RelationBall> sequence_balls(const SequenceSpec& seq, int lambda);

struct WindowWords {
    std::vector<Word> words;
    std::vector<std::int64_t> tail;      // indices the estimate is taken over
    bool window_approximate = true;
};

/// Words in Rel_lambda at every index of the last `tail_length` window
/// positions (0 selects half the window, rounded up).
WindowWords liminf_relations(const SequenceSpec& seq, int lambda, std::size_t tail_length = 0);
/// Words in Rel_lambda at some index of the last `tail_length` positions.
WindowWords limsup_relations(const SequenceSpec& seq, int lambda, std::size_t tail_length = 0);

/// Least index from which Rel_lambda is constant through the window end, with
/// at least `min_tail` indices in that tail.
std::optional<std::int64_t> converged_at(const SequenceSpec& seq, int lambda, std::size_t min_tail = 2);
std::optional<std::int64_t> converged_at(const SequenceSpec& seq, std::span<const RelationBall> balls,
                                         std::size_t min_tail = 2);

struct LimitVerdict {
    bool match = false;
    std::int64_t stabilized_at = 0;
    std::optional<Word> witness;
    RelationBall tail_ball;
    RelationBall limit_ball;
};

/// Throws NotStabilized when the window does not stabilize at lambda.
LimitVerdict limit_compare(const SequenceSpec& seq, const MarkedGroup& limit, int lambda);

}  // namespace mg
