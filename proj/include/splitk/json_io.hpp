#pragma once

#include <json.hpp>

#include "splitk/hilb.hpp"
#include "splitk/repmod.hpp"
#include "splitk/witness.hpp"

namespace splitk {

using Json = nlohmann::ordered_json;

// Coefficients serialize as JSON numbers when they fit in int64 and as
// decimal strings otherwise; parsing accepts both.
Json int_to_json(const Int& v);
Int int_from_json(const Json& j);

// {"ell": 5, "terms": [{"left":"V1","right":"V1","coeff":1}, ...]},
// terms sorted by label order.
Json ring_element_to_json(const RingElement& a);
RingElement ring_element_from_json(const Json& j);

Json series_to_json(const TruncatedSeries& s);
std::string series_to_csv(const TruncatedSeries& s);

Json decomposition_report_to_json(const DecompositionReport& report);
Json witness_report_to_json(const WitnessReport& report);
std::string witness_report_to_csv(const WitnessReport& report);
Json cross_check_report_to_json(const CrossCheckReport& report);
Json cell_report_to_json(const CellReport& report);
std::string cell_report_to_csv(const CellReport& report);

}  // namespace splitk
