#pragma once

#include <json.hpp>

#include "commlab/graph.hpp"
#include "commlab/hausdorff.hpp"
#include "commlab/lemma18.hpp"
#include "commlab/witness.hpp"

namespace commlab {

using Json = nlohmann::ordered_json;

Json to_json(const Group& g, const HausdorffProfile& p);
Json to_json(const PackingCensus& c);
Json to_json(const EndsReport& e);
Json to_json(const ValenceProfile& v);
Json to_json(const Group& g, const VerifyReport& v);
/// A and B as words; alpha and beta tabulated over the H-ball of `radius`.
Json to_json(Witness& w, std::size_t radius);
Json to_json(const Group& g, const Lemma18Report& r);
Json to_json(const DefectResult& d);
Json to_json(const InvariantSetReport& r);

}  // namespace commlab
