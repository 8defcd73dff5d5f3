#include "markedgroups/logic.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "markedgroups/table.hpp"

namespace mg {

// ---------------------------------------------------------------------------
// Parsing.

namespace {

struct Token {
    enum Kind { ident, number, sym, end } kind;
    std::string text;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Token::ident, std::string(s.substr(i, j - i))});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::number, std::string(s.substr(i, j - i))});
            i = j;
        } else if (s.substr(i, 2) == "->") {
            out.push_back({Token::sym, "->"});
            i += 2;
        } else if (std::string_view("()=&|;:^*,-").find(c) != std::string_view::npos) {
            out.push_back({Token::sym, std::string(1, c)});
            ++i;
        } else {
            throw InputError("sentence: unsupported character '" + std::string(1, c) + "'");
        }
    }
    out.push_back({Token::end, ""});
    return out;
}

class SentenceParser {
public:
    explicit SentenceParser(std::string_view text) : toks_(tokenize(text)) {}

    UniversalSentence parse() {
        UniversalSentence s;
        expect_ident("forall");
        while (peek().kind == Token::ident) {
            const std::string v = next().text;
            reject_keyword(v);
            if (std::find(s.variables.begin(), s.variables.end(), v) != s.variables.end())
                throw InputError("sentence: variable '" + v + "' bound twice");
            s.variables.push_back(v);
            if (peek_sym(",")) next();
        }
        if (s.variables.empty()) throw InputError("sentence: no variables after forall");
        vars_ = &s.variables;
        expect_sym(":");
        s.clauses.push_back(clause());
        while (peek_sym(";")) {
            next();
            s.clauses.push_back(clause());
        }
        if (peek().kind != Token::end) throw InputError("sentence: unexpected '" + peek().text + "'");
        return s;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool peek_sym(const char* s) const { return peek().kind == Token::sym && peek().text == s; }
    void expect_sym(const char* s) {
        if (!peek_sym(s)) throw InputError(std::string("sentence: expected '") + s + "' before '" + peek().text + "'");
        next();
    }
    void expect_ident(const char* s) {
        if (peek().kind != Token::ident || peek().text != s)
            throw InputError(std::string("sentence: expected '") + s + "'");
        next();
    }
    static void reject_keyword(const std::string& v) {
        if (v == "exists" || v == "forall" || v == "not")
            throw InputError("sentence: only a single leading universal block is supported");
    }

    // A parenthesised or bare list of equation chains joined by `sep`.
    std::vector<std::vector<Word>> group(const char* sep) {
        const bool paren = peek_sym("(");
        if (paren) next();
        std::vector<std::vector<Word>> items{chain()};
        while (peek_sym(sep)) {
            next();
            items.push_back(chain());
        }
        if (paren) expect_sym(")");
        return items;
    }

    bool arrow_ahead() const {
        for (std::size_t i = pos_; toks_[i].kind != Token::end; ++i) {
            if (toks_[i].kind == Token::sym && toks_[i].text == ";") return false;
            if (toks_[i].kind == Token::sym && toks_[i].text == "->") return true;
        }
        return false;
    }

    Clause clause() {
        Clause c;
        if (arrow_ahead()) {
            for (auto& chain_words : group("&")) c.antecedent.insert(c.antecedent.end(), chain_words.begin(), chain_words.end());
            expect_sym("->");
        }
        for (auto& chain_words : group("|")) {
            if (chain_words.size() != 1) throw InputError("sentence: equation chains are not allowed in a disjunction");
            c.consequent.push_back(chain_words.front());
        }
        return c;
    }

    // a = b = c  ->  {a b^-1, b c^-1}
    std::vector<Word> chain() {
        std::vector<Word> terms{term()};
        if (!peek_sym("=")) throw InputError("sentence: expected '=' in atom");
        while (peek_sym("=")) {
            next();
            terms.push_back(term());
        }
        std::vector<Word> eqs;
        for (std::size_t i = 0; i + 1 < terms.size(); ++i) eqs.push_back(terms[i].concat(terms[i + 1].inverse()));
        return eqs;
    }

    Word term() {
        const int rank = static_cast<int>(vars_->size());
        Word acc(rank);
        bool any = false;
        while (true) {
            if (peek_sym("*")) {
                next();
                continue;
            }
            if (peek().kind == Token::number) {
                if (peek().text != "1") throw InputError("sentence: only the constant 1 is allowed");
                next();
                any = true;
                continue;
            }
            if (peek().kind != Token::ident) break;
            const std::string name = next().text;
            reject_keyword(name);
            auto it = std::find(vars_->begin(), vars_->end(), name);
            if (it == vars_->end()) throw InputError("sentence: unbound variable '" + name + "'");
            long exp = 1;
            if (peek_sym("^")) {
                next();
                bool neg = false;
                if (peek_sym("-")) {
                    next();
                    neg = true;
                }
                if (peek().kind != Token::number) throw InputError("sentence: expected exponent");
                exp = std::stol(next().text);
                if (neg) exp = -exp;
            }
            const int idx = static_cast<int>(it - vars_->begin()) + 1;
            acc = acc.concat(Word::generator(rank, idx, static_cast<int>(exp)));
            any = true;
        }
        if (!any) throw InputError("sentence: empty term before '" + peek().text + "'");
        return acc;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const std::vector<std::string>* vars_ = nullptr;
};

std::string word_in_vars(const Word& w, const std::vector<std::string>& vars) { return w.to_named_text(vars); }

}  // namespace

UniversalSentence parse_sentence(std::string_view text) {
    auto s = SentenceParser(text).parse();
    s.name = std::string(text);
    return s;
}

std::string UniversalSentence::to_text() const {
    std::ostringstream os;
    os << "forall";
    for (const auto& v : variables) os << ' ' << v;
    os << " :";
    for (std::size_t c = 0; c < clauses.size(); ++c) {
        if (c) os << " ;";
        const auto& cl = clauses[c];
        if (!cl.antecedent.empty()) {
            os << " (";
            for (std::size_t i = 0; i < cl.antecedent.size(); ++i)
                os << (i ? " & " : "") << word_in_vars(cl.antecedent[i], variables) << "=1";
            os << ") ->";
        }
        os << " (";
        for (std::size_t i = 0; i < cl.consequent.size(); ++i)
            os << (i ? " | " : "") << word_in_vars(cl.consequent[i], variables) << "=1";
        os << ')';
    }
    return os.str();
}

namespace sentences {

UniversalSentence unique_involution() {
    auto s = parse_sentence("forall x y : (x^2=1 & y^2=1) -> (x=1 | y=1 | x=y)");
    s.name = "unique-involution";
    return s;
}

UniversalSentence torsion_free(int p) {
    if (p < 1) throw InputError("torsion-free:p needs p >= 1");
    auto s = parse_sentence("forall x : (x^" + std::to_string(p) + "=1) -> (x=1)");
    s.name = "torsion-free:" + std::to_string(p);
    return s;
}

UniversalSentence tautology() {
    auto s = parse_sentence("forall x : 1=1");
    s.name = "tautology";
    return s;
}

}  // namespace sentences

UniversalSentence resolve_sentence(std::string_view name_or_text) {
    if (name_or_text == "unique-involution") return sentences::unique_involution();
    if (name_or_text == "tautology") return sentences::tautology();
    if (name_or_text.rfind("torsion-free:", 0) == 0) {
        int p = 0;
        auto rest = name_or_text.substr(13);
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), p);
        if (ec != std::errc{} || ptr != rest.data() + rest.size()) throw InputError("bad torsion-free exponent");
        return sentences::torsion_free(p);
    }
    return parse_sentence(name_or_text);
}

// ---------------------------------------------------------------------------
// Model checking.

namespace {

template <class Value, class Eval>
ModelCheck check_tuples(const UniversalSentence& sigma, std::size_t domain_size, const Value& identity,
                        Eval&& eval_word, std::vector<std::size_t>& witness) {
    ModelCheck mc;
    const auto v = static_cast<std::size_t>(sigma.arity());
    std::vector<std::size_t> tuple(v, 0);
    if (domain_size == 0) return mc;
    while (true) {
        ++mc.tuples_checked;
        for (std::size_t c = 0; c < sigma.clauses.size(); ++c) {
            const auto& cl = sigma.clauses[c];
            bool premise = true;
            for (const auto& w : cl.antecedent)
                if (!(eval_word(w, tuple) == identity)) {
                    premise = false;
                    break;
                }
            if (!premise) continue;
            bool conclusion = false;
            for (const auto& w : cl.consequent)
                if (eval_word(w, tuple) == identity) {
                    conclusion = true;
                    break;
                }
            if (!conclusion) {
                mc.holds = false;
                mc.failed_clause = c;
                mc.counterexample.emplace();
                witness = tuple;
                return mc;  // caller maps the witness to elements
            }
        }
        std::size_t i = v;
        while (i > 0 && tuple[i - 1] + 1 == domain_size) tuple[--i] = 0;
        if (i == 0) break;
        ++tuple[i - 1];
    }
    return mc;
}

}  // namespace

ModelCheck holds(const Group& g, const UniversalSentence& sigma) {
    const CayleyTable table(g);
    std::vector<std::uint32_t> assignment(static_cast<std::size_t>(sigma.arity()));
    std::vector<std::size_t> last;
    auto eval = [&](const Word& w, const std::vector<std::size_t>& tuple) {
        for (std::size_t i = 0; i < tuple.size(); ++i) assignment[i] = static_cast<std::uint32_t>(tuple[i]);
        return table.eval(w, assignment);
    };
    ModelCheck mc = check_tuples(sigma, table.size(), table.identity(), eval, last);
    if (!mc.holds)
        for (auto idx : last) mc.counterexample->push_back(table.element(static_cast<std::uint32_t>(idx)));
    return mc;
}

ModelCheck holds_on(const Group& g, const UniversalSentence& sigma, std::span<const Element> domain) {
    std::vector<Element> assignment(static_cast<std::size_t>(sigma.arity()));
    std::vector<std::size_t> last;
    auto eval = [&](const Word& w, const std::vector<std::size_t>& tuple) {
        for (std::size_t i = 0; i < tuple.size(); ++i) assignment[i] = domain[tuple[i]];
        return evaluate<Group, Element>(w, g, assignment);
    };
    ModelCheck mc = check_tuples(sigma, domain.size(), g.identity(), eval, last);
    if (!mc.holds)
        for (auto idx : last) mc.counterexample->push_back(domain[idx]);
    return mc;
}

ModelCheck holds_bounded(const Group& g, const UniversalSentence& sigma, int radius) {
    auto domain = ball_graph(MarkedGroup::standard(g), radius).vertices;
    std::sort(domain.begin(), domain.end());
    return holds_on(g, sigma, domain);
}

EventualTruth eventual_truth(const SequenceSpec& family, const UniversalSentence& sigma) {
    EventualTruth et;
    et.indices = family.indices;
    if (et.indices.empty()) throw InputError("eventual_truth: empty window");
    for (auto i : family.indices) {
        const MarkedGroup mg = family.make(i);
        if (!mg.group().finite()) throw InputError("eventual_truth: " + mg.group().descriptor() + " is infinite");
        const bool ok = holds(mg.group(), sigma).holds;
        et.truth.push_back(ok);
        if (!ok) et.failures.push_back(i);
    }
    et.all_true = et.failures.empty();
    std::size_t j = et.truth.size();
    while (j > 0 && et.truth[j - 1]) --j;
    if (j < et.truth.size()) {
        et.cofinite_in_window = true;
        et.true_from = et.indices[j];
    }
    return et;
}

Theorem3Report theorem3_instance(const SequenceSpec& seq, const MarkedGroup& limit,
                                 const std::vector<UniversalSentence>& sentences, int radius, int lambda) {
    Theorem3Report rep;
    rep.limit = limit_compare(seq, limit, lambda);
    if (!rep.limit.match)
        throw InputError("theorem3_instance: the limit does not match the sequence at lambda=" + std::to_string(lambda));
    for (const auto& sigma : sentences) {
        Theorem3Report::Row row;
        row.sentence = sigma.name;
        row.true_on_window = eventual_truth(seq, sigma).all_true;
        if (row.true_on_window) {
            row.checked_on_limit = true;
            row.limit_check = holds_bounded(limit.group(), sigma, radius);
            if (!row.limit_check.holds) rep.consistent = false;
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace mg
