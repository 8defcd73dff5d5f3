#include "markedgroups/marked.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "markedgroups/kernels.hpp"
#include "markedgroups/parallel.hpp"

namespace mg {

const char* generation_status_name(GenerationStatus s) {
    switch (s) {
        case GenerationStatus::verified: return "verified";
        case GenerationStatus::certified: return "certified";
        case GenerationStatus::unverified: return "unverified";
    }
    return "?";
}

namespace {

std::vector<std::string> split_marking(std::string_view text) {
    std::vector<std::string> items;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if (c == ',' && depth == 0) {
            items.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    items.push_back(cur);
    for (auto& s : items) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    }
    return items;
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
}

GenerationStatus check_generation(const Group& g, std::span<const Element> marking) {
    if (g.finite()) {
        std::unordered_set<Element> seen{g.identity()};
        std::vector<Element> queue{g.identity()};
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (const auto& s : marking)
                for (const auto& n : {g.mul(queue[i], s), g.mul(queue[i], g.inv(s))})
                    if (seen.insert(n).second) queue.push_back(n);
        return queue.size() == g.order() ? GenerationStatus::verified : GenerationStatus::unverified;
    }
    // Radius-8 ball must reach every standard generator.
    std::unordered_set<Element> seen{g.identity()};
    std::vector<Element> frontier{g.identity()};
    for (int r = 0; r < 8 && !frontier.empty(); ++r) {
        std::vector<Element> next;
        for (const auto& e : frontier)
            for (const auto& s : marking)
                for (const auto& n : {g.mul(e, s), g.mul(e, g.inv(s))})
                    if (seen.insert(n).second) next.push_back(n);
        frontier = std::move(next);
    }
    for (const auto& s : g.generators())
        if (!seen.count(s)) return GenerationStatus::unverified;
    return GenerationStatus::certified;
}

std::atomic<std::uint64_t> g_budget{100'000'000};

}  // namespace

MarkedGroup::MarkedGroup(Group group, std::vector<Element> marking, std::string marking_text)
    : group_(std::move(group)), marking_(std::move(marking)), marking_text_(std::move(marking_text)) {
    if (marking_.empty()) throw InputError("marking must have at least one element");
    for (const auto& e : marking_)
        if (!group_.contains(e))
            throw InputError("marking element " + group_.format(e) + " is not a canonical element of " +
                             group_.descriptor());
    if (marking_text_.empty()) {
        for (std::size_t i = 0; i < marking_.size(); ++i)
            marking_text_ += (i ? "," : "") + group_.format(marking_[i]);
    }
    const auto items = split_marking(marking_text_);
    const bool named = items.size() == marking_.size() &&
                       std::all_of(items.begin(), items.end(), is_identifier) &&
                       std::unordered_set<std::string>(items.begin(), items.end()).size() == items.size();
    for (std::size_t i = 0; i < marking_.size(); ++i)
        letter_names_.push_back(named ? items[i] : "s" + std::to_string(i + 1));
    generation_ = check_generation(group_, marking_);
}

MarkedGroup MarkedGroup::parse(std::string_view group_descriptor, std::string_view marking_text) {
    return parse(Group::parse(group_descriptor), marking_text);
}

MarkedGroup MarkedGroup::parse(const Group& group, std::string_view marking_text) {
    std::vector<Element> marking;
    for (const auto& item : split_marking(marking_text)) {
        if (item.empty()) throw InputError("empty item in marking '" + std::string(marking_text) + "'");
        marking.push_back(group.element_from_text(item));
    }
    return MarkedGroup(group, std::move(marking), std::string(marking_text));
}

MarkedGroup MarkedGroup::standard(const Group& group) {
    std::string text;
    for (std::size_t i = 0; i < group.generator_names().size(); ++i)
        text += (i ? "," : "") + group.generator_names()[i];
    return MarkedGroup(group, group.generators(), text);
}

bool RelationBall::contains(const Word& w) const {
    return std::binary_search(words.begin(), words.end(), w, ShortlexLess{});
}

std::uint64_t word_budget() { return g_budget.load(); }
void set_word_budget(std::uint64_t budget) { g_budget.store(budget); }

// ---------------------------------------------------------------------------
// Level-synchronous enumeration.

namespace {

struct Level {
    kernels::FrontierBuffer elems;
    std::vector<std::uint32_t> parent;
    std::vector<std::uint8_t> letter;
    // Nodes are grouped by last letter: segment c is [seg[c], seg[c+1]).
    std::vector<std::size_t> seg;
};

void multiply_batch(const Group& g, const std::optional<kernels::FlatParams>& fp, const Element& gen,
                    const kernels::FrontierBuffer& src, std::size_t src_off, kernels::FrontierBuffer& dst,
                    std::size_t dst_off, std::size_t n, std::uint8_t* flags) {
    if (n == 0) return;
    if (fp) {
        kernels::right_multiply(*fp, gen, src.view(src_off), dst.view(dst_off), flags, n);
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Element r = g.mul(src.get(src_off + i), gen);
        dst.set(dst_off + i, r);
        flags[i] = r == g.identity() ? 1 : 0;
    }
}

Word reconstruct(int rank, const std::vector<Level>& levels, std::size_t depth, std::size_t node) {
    std::vector<Letter> letters(depth);
    for (std::size_t d = depth; d >= 1; --d) {
        letters[d - 1] = letter_from_code(levels[d].letter[node]);
        node = levels[d].parent[node];
    }
    return Word::reduce(rank, letters);
}

std::vector<Word> enumerate_into(const MarkedGroup& mg, int lambda, std::span<const Element> target,
                                 bool identity_only, EnumOptions opts) {
    if (lambda < 0) throw InputError("lambda must be >= 0");
    const int m = mg.rank();
    const std::uint64_t total = ball_size({m, lambda});
    if (total > word_budget())
        throw BudgetExceeded("ball of radius " + std::to_string(lambda) + " in rank " + std::to_string(m) +
                             " has " + std::to_string(total) + " words, budget is " +
                             std::to_string(word_budget()));
    const Group& g = mg.group();
    if (g.torsion() > (std::int64_t{1} << 30))
        throw InputError("enumeration supports torsion orders up to 2^30");
    const auto fp = opts.use_kernels ? kernels::flat_params(g) : std::nullopt;
    const int letters = 2 * m;
    std::vector<Element> gens(static_cast<std::size_t>(letters));
    for (int c = 0; c < letters; ++c) {
        const Element& s = mg.marking()[static_cast<std::size_t>(c / 2)];
        gens[static_cast<std::size_t>(c)] = (c % 2 == 0) ? s : g.inv(s);
    }

    std::vector<Level> levels(static_cast<std::size_t>(lambda) + 1);
    levels[0].elems.resize(1, g.free_rank());
    levels[0].elems.set(0, g.identity());
    levels[0].parent = {0};
    levels[0].letter = {0};

    std::vector<Word> out;
    std::vector<std::uint8_t> flags;
    for (int d = 1; d <= lambda; ++d) {
        const Level& prev = levels[static_cast<std::size_t>(d - 1)];
        Level& cur = levels[static_cast<std::size_t>(d)];
        const std::size_t prev_n = prev.parent.size();
        const std::size_t n = d == 1 ? static_cast<std::size_t>(letters) : prev_n * static_cast<std::size_t>(letters - 1);
        cur.elems.resize(n, g.free_rank());
        cur.parent.resize(n);
        cur.letter.resize(n);
        cur.seg.assign(static_cast<std::size_t>(letters) + 1, 0);
        flags.assign(n, 0);
        std::size_t off = 0;
        for (int c = 0; c < letters; ++c) {
            cur.seg[static_cast<std::size_t>(c)] = off;
            auto emit = [&](std::size_t begin, std::size_t count) {
                multiply_batch(g, fp, gens[static_cast<std::size_t>(c)], prev.elems, begin, cur.elems, off, count,
                               flags.data() + off);
                for (std::size_t i = 0; i < count; ++i) {
                    cur.parent[off + i] = static_cast<std::uint32_t>(begin + i);
                    cur.letter[off + i] = static_cast<std::uint8_t>(c);
                }
                off += count;
            };
            if (d == 1) {
                emit(0, 1);
            } else {
                for (int s = 0; s < letters; ++s) {
                    if (s == (c ^ 1)) continue;  // would cancel
                    const std::size_t b = prev.seg[static_cast<std::size_t>(s)];
                    const std::size_t e = prev.seg[static_cast<std::size_t>(s) + 1];
                    emit(b, e - b);
                }
            }
        }
        cur.seg[static_cast<std::size_t>(letters)] = off;
        if (!identity_only) {
            for (std::size_t i = 0; i < n; ++i)
                flags[i] = std::binary_search(target.begin(), target.end(), cur.elems.get(i)) ? 1 : 0;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (flags[i]) out.push_back(reconstruct(m, levels, static_cast<std::size_t>(d), i));
        // Element storage of the parent level is no longer needed.
        if (d >= 1) levels[static_cast<std::size_t>(d - 1)].elems = kernels::FrontierBuffer();
    }
    std::sort(out.begin(), out.end(), ShortlexLess{});
    return out;
}

}  // namespace

RelationBall rel_ball(const MarkedGroup& mg, int lambda, EnumOptions opts) {
    const Element id{};
    RelationBall rb{mg.rank(), lambda, enumerate_into(mg, lambda, std::span<const Element>(&id, 1), true, opts)};
    return rb;
}

std::vector<Word> words_into(const MarkedGroup& mg, int lambda, std::span<const Element> target,
                             EnumOptions opts) {
    if (!std::is_sorted(target.begin(), target.end())) {
        std::vector<Element> sorted(target.begin(), target.end());
        std::sort(sorted.begin(), sorted.end());
        return enumerate_into(mg, lambda, sorted, false, opts);
    }
    return enumerate_into(mg, lambda, target, false, opts);
}

RelationBall rel_ball_bfs(const MarkedGroup& mg, int lambda) {
    if (lambda < 0) throw InputError("lambda must be >= 0");
    const std::uint64_t total = ball_size({mg.rank(), lambda});
    if (total > word_budget()) throw BudgetExceeded("rel_ball_bfs: word budget exceeded");
    const Group& g = mg.group();
    const int m = mg.rank();
    std::vector<Element> pos, neg;
    for (const auto& s : mg.marking()) {
        pos.push_back(s);
        neg.push_back(g.inv(s));
    }
    RelationBall rb{m, lambda, {}};
    std::vector<Letter> prefix;
    // Depth-first over the prefix tree, carrying the current element.
    auto visit = [&](auto&& self, const Element& cur) -> void {
        if (!prefix.empty() && cur == g.identity()) rb.words.push_back(Word::reduce(m, prefix));
        if (static_cast<int>(prefix.size()) == lambda) return;
        for (int i = 1; i <= m; ++i) {
            for (Letter l : {i, -i}) {
                if (!prefix.empty() && prefix.back() == -l) continue;
                prefix.push_back(l);
                self(self, g.mul(cur, l > 0 ? pos[static_cast<std::size_t>(i - 1)] : neg[static_cast<std::size_t>(i - 1)]));
                prefix.pop_back();
            }
        }
    };
    visit(visit, g.identity());
    std::sort(rb.words.begin(), rb.words.end(), ShortlexLess{});
    return rb;
}

std::optional<Word> first_difference(const RelationBall& a, const RelationBall& b) {
    std::vector<Word> diff;
    std::set_symmetric_difference(a.words.begin(), a.words.end(), b.words.begin(), b.words.end(),
                                  std::back_inserter(diff), ShortlexLess{});
    if (diff.empty()) return std::nullopt;
    return diff.front();
}

double Distance::value() const { return std::exp(-static_cast<double>(agree_radius)); }

Distance gg_distance(const MarkedGroup& a, const MarkedGroup& b, int lambda_max) {
    if (a.rank() != b.rank()) throw InputError("gg_distance: rank mismatch");
    const RelationBall ra = rel_ball(a, lambda_max);
    const RelationBall rb = rel_ball(b, lambda_max);
    std::vector<Word> diff;
    std::set_symmetric_difference(ra.words.begin(), ra.words.end(), rb.words.begin(), rb.words.end(),
                                  std::back_inserter(diff), ShortlexLess{});
    Distance d;
    d.lambda_max = lambda_max;
    if (diff.empty()) {
        d.agree_radius = lambda_max;
        return d;
    }
    d.exact = true;
    d.witness = diff.front();
    d.agree_radius = static_cast<int>(diff.front().length()) - 1;
    for (const auto& w : diff)
        if (w.length() == diff.front().length()) d.shortest_witnesses.push_back(w);
    return d;
}

// ---------------------------------------------------------------------------
// Cayley balls.

BallGraph ball_graph(const MarkedGroup& mg, int radius) {
    if (radius < 0) throw InputError("radius must be >= 0");
    const Group& g = mg.group();
    BallGraph bg;
    bg.rank = mg.rank();
    bg.radius = radius;
    std::unordered_map<Element, std::uint32_t> index;
    bg.vertices.push_back(g.identity());
    bg.depth.push_back(0);
    bg.geodesics.emplace_back(bg.rank);
    index[g.identity()] = 0;
    std::vector<Element> pos, neg;
    for (const auto& s : mg.marking()) {
        pos.push_back(s);
        neg.push_back(g.inv(s));
    }
    std::size_t begin = 0;
    for (int d = 1; d <= radius; ++d) {
        const std::size_t end = bg.vertices.size();
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t s = 0; s < pos.size(); ++s)
                for (int sign : {1, -1}) {
                    Element n = g.mul(bg.vertices[i], sign > 0 ? pos[s] : neg[s]);
                    if (index.emplace(n, static_cast<std::uint32_t>(bg.vertices.size())).second) {
                        bg.vertices.push_back(n);
                        bg.depth.push_back(d);
                        bg.geodesics.push_back(
                            bg.geodesics[i].concat(Word::generator(bg.rank, static_cast<int>(s) + 1, sign)));
                    }
                }
        begin = end;
    }
    for (std::size_t i = 0; i < bg.vertices.size(); ++i)
        for (std::size_t s = 0; s < pos.size(); ++s) {
            auto it = index.find(g.mul(bg.vertices[i], pos[s]));
            if (it != index.end())
                bg.edges.push_back({static_cast<std::uint32_t>(i), it->second, static_cast<int>(s) + 1});
        }
    return bg;
}

bool ball_isomorphic(const BallGraph& a, const BallGraph& b) {
    if (a.radius != b.radius) throw InputError("ball_isomorphic: radius mismatch");
    if (a.rank != b.rank) throw InputError("ball_isomorphic: rank mismatch");
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
    const std::size_t n = a.vertices.size();
    const auto m = static_cast<std::size_t>(a.rank);
    auto tables = [&](const BallGraph& g, std::vector<std::int64_t>& out, std::vector<std::int64_t>& in) {
        out.assign(n * m, -1);
        in.assign(n * m, -1);
        for (const auto& e : g.edges) {
            const auto l = static_cast<std::size_t>(e.label - 1);
            out[e.from * m + l] = e.to;
            in[e.to * m + l] = e.from;
        }
    };
    std::vector<std::int64_t> ao, ai, bo, bi;
    tables(a, ao, ai);
    tables(b, bo, bi);
    std::vector<std::int64_t> fwd(n, -1), rev(n, -1);
    fwd[0] = 0;
    rev[0] = 0;
    std::deque<std::size_t> queue{0};
    auto link = [&](std::int64_t u, std::int64_t v) -> bool {
        if ((u < 0) != (v < 0)) return false;
        if (u < 0) return true;
        if (fwd[static_cast<std::size_t>(u)] < 0 && rev[static_cast<std::size_t>(v)] < 0) {
            fwd[static_cast<std::size_t>(u)] = v;
            rev[static_cast<std::size_t>(v)] = u;
            queue.push_back(static_cast<std::size_t>(u));
            return true;
        }
        return fwd[static_cast<std::size_t>(u)] == v;
    };
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        const auto v = static_cast<std::size_t>(fwd[u]);
        for (std::size_t l = 0; l < m; ++l) {
            if (!link(ao[u * m + l], bo[v * m + l])) return false;
            if (!link(ai[u * m + l], bi[v * m + l])) return false;
        }
    }
    return std::all_of(fwd.begin(), fwd.end(), [](std::int64_t x) { return x >= 0; });
}

std::string BallGraph::to_dot(const Group& g) const {
    std::ostringstream os;
    os << "digraph ball {\n";
    os << "  // radius " << radius << ", rank " << rank << ", root v0\n";
    os << "  root=\"v0\";\n";
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        os << "  v" << i << " [label=\"" << g.format(vertices[i]) << "\"";
        if (i == 0) os << ", shape=doublecircle, root=true";
        os << "];\n";
    }
    for (const auto& e : edges) os << "  v" << e.from << " -> v" << e.to << " [label=" << e.label << "];\n";
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Sequences.

std::vector<std::int64_t> index_window(std::int64_t first, std::int64_t last) {
    if (last < first) throw InputError("empty index window");
    std::vector<std::int64_t> out;
    for (auto i = first; i <= last; ++i) out.push_back(i);
    return out;
}

namespace {

struct ExprParser {
    std::string_view s;
    std::size_t i = 0;
    std::int64_t n;

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    std::int64_t expr() {
        std::int64_t v = term();
        for (ws(); i < s.size() && (s[i] == '+' || s[i] == '-'); ws()) {
            const char op = s[i++];
            const std::int64_t r = term();
            v = op == '+' ? v + r : v - r;
        }
        return v;
    }
    std::int64_t term() {
        std::int64_t v = factor();
        for (ws(); i < s.size() && s[i] == '*'; ws()) {
            ++i;
            v *= factor();
        }
        return v;
    }
    std::int64_t factor() {
        std::int64_t b = base();
        ws();
        if (i < s.size() && s[i] == '^') {
            ++i;
            const std::int64_t e = factor();
            if (e < 0 || e > 62) throw InputError("exponent out of range in index expression");
            std::int64_t r = 1;
            for (std::int64_t k = 0; k < e; ++k) r *= b;
            return r;
        }
        return b;
    }
    std::int64_t base() {
        ws();
        if (i >= s.size()) throw InputError("truncated index expression");
        if (s[i] == '(') {
            ++i;
            const std::int64_t v = expr();
            ws();
            if (i >= s.size() || s[i] != ')') throw InputError("missing ')' in index expression");
            ++i;
            return v;
        }
        if (s[i] == '-') {
            ++i;
            return -base();
        }
        if (s[i] == 'n') {
            ++i;
            return n;
        }
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw InputError("unexpected '" + std::string(1, s[i]) + "' in index expression");
        std::int64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
        return v;
    }
};

}  // namespace

std::int64_t eval_index_expr(std::string_view expr, std::int64_t n) {
    ExprParser p{expr, 0, n};
    const std::int64_t v = p.expr();
    p.ws();
    if (p.i != expr.size()) throw InputError("trailing characters in index expression '" + std::string(expr) + "'");
    return v;
}

std::string instantiate_template(std::string_view text, std::int64_t n) {
    std::string out;
    std::size_t i = 0;
    // Descriptor arguments: name(expr,expr) with no nested braces.
    const auto open = text.find('(');
    const bool descriptor_like = open != std::string_view::npos && open > 0 &&
                                 std::isalpha(static_cast<unsigned char>(text[0])) &&
                                 text.find('{') == std::string_view::npos && text.back() == ')' &&
                                 text.find(',') > open;
    if (descriptor_like) {
        out.append(text.substr(0, open + 1));
        std::string_view args = text.substr(open + 1, text.size() - open - 2);
        std::size_t start = 0;
        int depth = 0;
        for (std::size_t k = 0; k <= args.size(); ++k) {
            if (k < args.size() && args[k] == '(') ++depth;
            if (k < args.size() && args[k] == ')') --depth;
            if (k == args.size() || (args[k] == ',' && depth == 0)) {
                if (start) out.push_back(',');
                out += std::to_string(eval_index_expr(args.substr(start, k - start), n));
                start = k + 1;
            }
        }
        out.push_back(')');
        return out;
    }
    while (i < text.size()) {
        if (text[i] == '{') {
            const auto close = text.find('}', i);
            if (close == std::string_view::npos) throw InputError("unclosed '{' in template");
            out += std::to_string(eval_index_expr(text.substr(i + 1, close - i - 1), n));
            i = close + 1;
        } else {
            out.push_back(text[i++]);
        }
    }
    return out;
}

SequenceSpec family_sequence(std::string descriptor_template, std::string marking_template,
                             std::vector<std::int64_t> indices) {
    SequenceSpec seq;
    seq.name = descriptor_template + " [" + marking_template + "]";
    seq.indices = std::move(indices);
    seq.make = [d = std::move(descriptor_template), m = std::move(marking_template)](std::int64_t n) {
        if (m.empty()) return MarkedGroup::standard(Group::parse(instantiate_template(d, n)));
        return MarkedGroup::parse(instantiate_template(d, n), instantiate_template(m, n));
    };
    return seq;
}

SequenceSpec constant_sequence(const MarkedGroup& mg, std::vector<std::int64_t> indices) {
    return SequenceSpec{"constant " + mg.label(), [mg](std::int64_t) { return mg; }, std::move(indices)};
}

std::vector<RelationBall> sequence_balls(const SequenceSpec& seq, int lambda) {
    if (seq.indices.empty()) throw InputError("sequence window is empty");
    std::vector<RelationBall> balls(seq.indices.size());
    parallel_for(seq.indices.size(), [&](std::size_t i) { balls[i] = rel_ball(seq.make(seq.indices[i]), lambda); });
    const int rank = balls.front().rank;
    for (const auto& b : balls)
        if (b.rank != rank) throw InputError("sequence " + seq.name + " does not have constant rank");
    return balls;
}

namespace {

std::size_t resolve_tail(const SequenceSpec& seq, std::size_t tail_length) {
    const std::size_t n = seq.indices.size();
    if (tail_length == 0) tail_length = (n + 1) / 2;
    return std::min(tail_length, n);
}

}  // namespace

WindowWords liminf_relations(const SequenceSpec& seq, int lambda, std::size_t tail_length) {
    const auto balls = sequence_balls(seq, lambda);
    const std::size_t tail = resolve_tail(seq, tail_length);
    WindowWords out;
    out.tail.assign(seq.indices.end() - static_cast<std::ptrdiff_t>(tail), seq.indices.end());
    out.words = balls.back().words;
    for (std::size_t i = balls.size() - tail; i < balls.size(); ++i) {
        std::vector<Word> keep;
        std::set_intersection(out.words.begin(), out.words.end(), balls[i].words.begin(), balls[i].words.end(),
                              std::back_inserter(keep), ShortlexLess{});
        out.words = std::move(keep);
    }
    return out;
}

WindowWords limsup_relations(const SequenceSpec& seq, int lambda, std::size_t tail_length) {
    const auto balls = sequence_balls(seq, lambda);
    const std::size_t tail = resolve_tail(seq, tail_length);
    WindowWords out;
    out.tail.assign(seq.indices.end() - static_cast<std::ptrdiff_t>(tail), seq.indices.end());
    for (std::size_t i = balls.size() - tail; i < balls.size(); ++i) {
        std::vector<Word> merged;
        std::set_union(out.words.begin(), out.words.end(), balls[i].words.begin(), balls[i].words.end(),
                       std::back_inserter(merged), ShortlexLess{});
        out.words = std::move(merged);
    }
    return out;
}

std::optional<std::int64_t> converged_at(const SequenceSpec& seq, std::span<const RelationBall> balls,
                                         std::size_t min_tail) {
    if (balls.size() != seq.indices.size() || balls.empty()) throw InputError("converged_at: ball/window mismatch");
    std::size_t j = balls.size() - 1;
    while (j > 0 && balls[j - 1] == balls.back()) --j;
    if (balls.size() - j < std::max<std::size_t>(min_tail, 1)) return std::nullopt;
    return seq.indices[j];
}

std::optional<std::int64_t> converged_at(const SequenceSpec& seq, int lambda, std::size_t min_tail) {
    const auto balls = sequence_balls(seq, lambda);
    return converged_at(seq, balls, min_tail);
}

LimitVerdict limit_compare(const SequenceSpec& seq, const MarkedGroup& limit, int lambda) {
    const auto balls = sequence_balls(seq, lambda);
    if (balls.front().rank != limit.rank()) throw InputError("limit_compare: rank mismatch");
    const auto at = converged_at(seq, balls);
    if (!at)
        throw NotStabilized("sequence " + seq.name + " does not stabilize at lambda=" + std::to_string(lambda) +
                            " within its window");
    LimitVerdict v;
    v.stabilized_at = *at;
    v.tail_ball = balls.back();
    v.limit_ball = rel_ball(limit, lambda);
    v.witness = first_difference(v.tail_ball, v.limit_ball);
    v.match = !v.witness.has_value();
    return v;
}

}  // namespace mg
