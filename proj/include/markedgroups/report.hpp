#pragma once

#include <json.hpp>

#include "markedgroups/logic.hpp"
#include "markedgroups/marked.hpp"
#include "markedgroups/residual.hpp"
#include "markedgroups/structure.hpp"

namespace mg::report {

using nlohmann::json;

const char* verdict(bool pass);

json words_json(const MarkedGroup& mg, std::span<const Word> words);
json elements_json(const Group& g, std::span<const Element> elems);
json marked_json(const MarkedGroup& mg);

json ball_json(const MarkedGroup& mg, const RelationBall& ball);
json distance_json(const MarkedGroup& a, const MarkedGroup& b, const Distance& d);
json limit_json(const SequenceSpec& seq, const MarkedGroup& limit, int lambda, const LimitVerdict& v);
/// Per-index ball digests of a sequence at lambda.
json sequence_digests(const SequenceSpec& seq, int lambda);
json lifted_digests(const LiftedSequence& lifted, int lambda);

json model_check_json(const Group& g, const UniversalSentence& sigma, const ModelCheck& mc);
json eventual_json(const SequenceSpec& seq, const UniversalSentence& sigma, const EventualTruth& et);
json theorem3_json(const SequenceSpec& seq, const MarkedGroup& limit, const Theorem3Report& r);

json kernel_json(const LiftedSequence& lifted, const KernelIdentification& k);
json centrality_json(const LiftedSequence& lifted, const CentralityReport& r);
json center_json(const CenterCheck& c);
json cases_json(const CaseAnalysis& a);
json abelian_json(const AbelianLimitCheck& a);
json theorem1_json(const LiftedSequence& lifted, const Theorem1Report& r);
json residual_json(const MarkedGroup& limit, const std::vector<ResidualWitness>& table);

}  // namespace mg::report
