#include "markedgroups/report.hpp"

#include <cmath>

#include "markedgroups/io.hpp"

namespace mg::report {

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

json words_json(const MarkedGroup& mg, std::span<const Word> words) {
    json out = json::array();
    for (const auto& w : words) out.push_back(mg.word_text(w));
    return out;
}

json elements_json(const Group& g, std::span<const Element> elems) {
    json out = json::array();
    for (const auto& e : elems) out.push_back(g.format(e));
    return out;
}

json marked_json(const MarkedGroup& mg) {
    return {{"group", mg.group().descriptor()},
            {"marking", mg.marking_text()},
            {"rank", mg.rank()},
            {"generation", generation_status_name(mg.generation())}};
}

json ball_json(const MarkedGroup& mg, const RelationBall& ball) {
    return {{"input", marked_json(mg)},
            {"lambda", ball.radius},
            {"count", ball.words.size()},
            {"sha256", io::ball_digest(ball)}};
}

namespace {

json opt_word(const MarkedGroup& mg, const std::optional<Word>& w) {
    return w ? json(mg.word_text(*w)) : json(nullptr);
}

}  // namespace

json distance_json(const MarkedGroup& a, const MarkedGroup& b, const Distance& d) {
    return {{"a", marked_json(a)},
            {"b", marked_json(b)},
            {"lambda_max", d.lambda_max},
            {"agree_radius", d.agree_radius},
            {"exact", d.exact},
            {"distance", d.value()},
            {"witness", opt_word(a, d.witness)},
            {"shortest_witnesses", words_json(a, d.shortest_witnesses)}};
}

json sequence_digests(const SequenceSpec& seq, int lambda) {
    const auto balls = sequence_balls(seq, lambda);
    json out = json::array();
    for (std::size_t i = 0; i < balls.size(); ++i) {
        const MarkedGroup mg = seq.make(seq.indices[i]);
        out.push_back({{"n", seq.indices[i]},
                       {"group", mg.group().descriptor()},
                       {"marking", mg.marking_text()},
                       {"count", balls[i].words.size()},
                       {"sha256", io::ball_digest(balls[i])}});
    }
    return out;
}

json lifted_digests(const LiftedSequence& lifted, int lambda) {
    return {{"covers", sequence_digests(lifted.covers(), lambda)},
            {"quotients", sequence_digests(lifted.quotients(), lambda)}};
}

json limit_json(const SequenceSpec& seq, const MarkedGroup& limit, int lambda, const LimitVerdict& v) {
    return {{"sequence", seq.name},
            {"window", seq.indices},
            {"limit", marked_json(limit)},
            {"lambda", lambda},
            {"stabilized_at", v.stabilized_at},
            {"tail_sha256", io::ball_digest(v.tail_ball)},
            {"limit_sha256", io::ball_digest(v.limit_ball)},
            {"witness", opt_word(limit, v.witness)},
            {"digests", sequence_digests(seq, lambda)},
            {"verdict", verdict(v.match)}};
}

json model_check_json(const Group& g, const UniversalSentence& sigma, const ModelCheck& mc) {
    json out{{"group", g.descriptor()},
             {"sentence", sigma.name.empty() ? sigma.to_text() : sigma.name},
             {"formula", sigma.to_text()},
             {"tuples_checked", mc.tuples_checked},
             {"verdict", verdict(mc.holds)}};
    if (mc.counterexample) {
        json ce = json::object();
        for (std::size_t i = 0; i < mc.counterexample->size(); ++i)
            ce[sigma.variables[i]] = g.format((*mc.counterexample)[i]);
        out["counterexample"] = ce;
        out["failed_clause"] = mc.failed_clause;
    }
    return out;
}

json eventual_json(const SequenceSpec& seq, const UniversalSentence& sigma, const EventualTruth& et) {
    json rows = json::array();
    for (std::size_t i = 0; i < et.indices.size(); ++i)
        rows.push_back({{"n", et.indices[i]}, {"holds", static_cast<bool>(et.truth[i])}});
    json out{{"sequence", seq.name},
             {"sentence", sigma.name.empty() ? sigma.to_text() : sigma.name},
             {"window", et.indices},
             {"rows", rows},
             {"failures", et.failures},
             {"all_true", et.all_true},
             {"cofinite_in_window", et.cofinite_in_window},
             {"window_approximate", true}};
    out["true_from"] = et.true_from ? json(*et.true_from) : json(nullptr);
    return out;
}

json theorem3_json(const SequenceSpec& seq, const MarkedGroup& limit, const Theorem3Report& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        json j{{"sentence", row.sentence}, {"true_on_window", row.true_on_window}, {"checked_on_limit", row.checked_on_limit}};
        if (row.checked_on_limit) {
            j["limit_tuples_checked"] = row.limit_check.tuples_checked;
            j["limit_verdict"] = verdict(row.limit_check.holds);
            if (row.limit_check.counterexample)
                j["counterexample"] = elements_json(limit.group(), *row.limit_check.counterexample);
        }
        rows.push_back(j);
    }
    return {{"sequence", seq.name},
            {"window", seq.indices},
            {"limit", marked_json(limit)},
            {"limit_match", verdict(r.limit.match)},
            {"rows", rows},
            {"verdict", verdict(r.consistent)}};
}

json kernel_json(const LiftedSequence& lifted, const KernelIdentification& k) {
    const MarkedGroup& limit = *lifted.limit_cover;
    json m_sample = json::array();
    for (std::size_t i = 0; i < k.m_approx.size() && i < 32; ++i) m_sample.push_back(limit.word_text(k.m_approx[i]));
    return {{"sequence", lifted.name},
            {"window", lifted.indices},
            {"tail", k.tail},
            {"lambda", k.lambda},
            {"limit_cover", marked_json(limit)},
            {"covers_stable_at", k.covers_stable_at},
            {"quotients_stable_at", k.quotients_stable_at},
            {"m_approx_count", k.m_approx.size()},
            {"m_approx_first", m_sample},
            {"k_approx", elements_json(limit.group(), k.k_approx)},
            {"digests", lifted_digests(lifted, k.lambda)},
            {"steps",
             {{"kernel-words-match-quotient-relations", verdict(k.quotient_consistent)},
              {"kernel-words-are-full-preimage", verdict(k.preimage_consistent)},
              {"kernel-inverse-closed", verdict(k.inverse_closed)},
              {"kernel-is-subgroup", verdict(k.subgroup)},
              {"kernel-is-central", verdict(k.central)}}}};
}

json centrality_json(const LiftedSequence& lifted, const CentralityReport& r) {
    const MarkedGroup& limit = *lifted.limit_cover;
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"v", limit.word_text(row.v)},
                        {"commutator", limit.word_text(row.commutator)},
                        {"radius", row.radius},
                        {"relation_on_tail", row.relation_on_tail},
                        {"relation_on_limit", row.relation_on_limit},
                        {"balls_isomorphic_from",
                         row.balls_isomorphic_from ? json(*row.balls_isomorphic_from) : json(nullptr)}});
    return {{"sequence", lifted.name},
            {"window", lifted.indices},
            {"tail", r.tail},
            {"w", limit.word_text(r.w)},
            {"w_in_kernel", r.w_in_kernel},
            {"rows", rows},
            {"verdict", verdict(r.central())}};
}

json center_json(const CenterCheck& c) {
    const Group g = Group::parse(c.group);
    return {{"group", c.group},
            {"computed", elements_json(g, c.computed)},
            {"expected", elements_json(g, c.expected)},
            {"bounded", c.bounded},
            {"bound", c.bound},
            {"verdict", verdict(c.match)}};
}

json cases_json(const CaseAnalysis& a) {
    const Group h = Group::limit_cover(a.l, a.k);
    json cases = json::array();
    for (const auto& r : a.cases) {
        const Group q = Group::parse(r.quotient);
        json census{{"with_zero_free_part", elements_json(q, r.census.with_zero_free_part)},
                    {"unbounded", r.census.unbounded}};
        if (r.census.family_representative) census["family_representative"] = q.format(*r.census.family_representative);
        census["count"] = r.census.count() ? json(*r.census.count()) : json("infinite");
        json witnesses = json::array();
        for (std::size_t i = 0; i < r.witnesses.size(); ++i)
            witnesses.push_back({{"element", h.format(r.witnesses[i])}, {"involution", static_cast<bool>(r.witness_ok[i])}});
        json j{{"case", r.index},
               {"kernel", elements_json(h, r.kernel)},
               {"quotient", r.quotient},
               {"census", census},
               {"witnesses", witnesses},
               {"claimed", r.claimed_minimum == 1 ? "exactly 1" : "at least " + std::to_string(r.claimed_minimum)},
               {"unique_involution", r.unique_involution},
               {"verdict", verdict(r.claim_holds)}};
        if (!r.note.empty()) j["note"] = r.note;
        cases.push_back(j);
    }
    return {{"l", a.l}, {"k", a.k}, {"cover", a.cover}, {"cases", cases},
            {"unique_case", a.unique_case == 0 ? json(nullptr) : json(a.unique_case)}};
}

json abelian_json(const AbelianLimitCheck& a) {
    json out{{"k", a.k}, {"lambda", a.lambda}, {"sequence", a.sequence}, {"limit", a.limit}};
    if (a.verdict) {
        out["stabilized_at"] = a.verdict->stabilized_at;
        out["tail_sha256"] = io::ball_digest(a.verdict->tail_ball);
        out["limit_sha256"] = io::ball_digest(a.verdict->limit_ball);
    } else {
        out["stabilized_at"] = nullptr;
    }
    out["verdict"] = verdict(a.match());
    return out;
}

json theorem1_json(const LiftedSequence& lifted, const Theorem1Report& r) {
    const MarkedGroup& limit = *lifted.limit_cover;
    json out{{"sequence", lifted.name},
             {"window", lifted.indices},
             {"lambda", r.lambda},
             {"limit_cover", marked_json(limit)},
             {"covers_stabilized_at", r.covers.stabilized_at},
             {"quotients_stabilized_at", r.quotients_stable_at},
             {"k_approx", elements_json(limit.group(), r.kernel.k_approx)},
             {"quotient_of_limit", r.quotient_of_limit},
             {"witness", opt_word(limit, r.witness)},
             {"digests", lifted_digests(lifted, r.lambda)}};
    json steps{{"covers-converge-to-limit-cover", verdict(r.covers.match)},
               {"kernel-is-central", verdict(r.kernel.central)},
               {"quotient-of-limit-matches-tail", verdict(r.quotient_matches_tail)}};
    if (lifted.quotient_limit) {
        out["named_quotient_limit"] = marked_json(*lifted.quotient_limit);
        steps["quotient-of-limit-matches-named-limit"] = verdict(r.matches_named_limit.value_or(false));
    }
    out["steps"] = steps;
    out["verdict"] = verdict(r.consistent());
    return out;
}

json residual_json(const MarkedGroup& limit, const std::vector<ResidualWitness>& table) {
    json rows = json::array();
    bool all = true;
    int prev_n = 0;
    bool monotone = true;
    for (const auto& w : table) {
        json attempts = json::array();
        for (const auto& a : w.attempts) {
            json j{{"n", a.n}, {"success", a.success}, {"homs_examined", a.homs_examined}};
            if (a.collision) {
                const Group q = Group::quaternion(a.n);
                j["collision"] = {{"first", a.collision->first_word},
                                  {"second", a.collision->second_word},
                                  {"image", q.format(a.collision->image)},
                                  {"fiber", a.collision->fiber}};
            }
            attempts.push_back(j);
        }
        json row{{"R", w.radius}, {"found", w.found}, {"ball_size", w.ball_size}, {"attempts", attempts}};
        if (w.found) {
            const Group q = Group::quaternion(w.n);
            row["n"] = w.n;
            row["generator_images"] = elements_json(q, w.hom.images);
            row["marking_images"] = elements_json(q, w.marking_images);
            row["distance_bound"] = std::exp(-static_cast<double>(w.radius));
            row["steps"] = {{"relators-hold", verdict(w.von_dyck_verified)},
                            {"injective-on-ball", verdict(w.injectivity_verified)},
                            {"relation-balls-agree", verdict(w.distance_verified)}};
            if (w.n < prev_n) monotone = false;
            prev_n = w.n;
        }
        all = all && w.found && w.von_dyck_verified && w.injectivity_verified && w.distance_verified;
        rows.push_back(row);
    }
    return {{"limit", marked_json(limit)},
            {"presentation", table.empty() ? "" : table.front().presentation_note},
            {"rows", rows},
            {"n_nondecreasing", monotone},
            {"verdict", verdict(all)}};
}

}  // namespace mg::report
