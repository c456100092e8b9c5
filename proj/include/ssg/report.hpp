#pragma once

// JSON views of results. Field names follow schema/report.schema.json.

#include <string>

#include "json.hpp"
#include "ssg/scondition.hpp"

namespace ssg::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Skeleton with every top-level field present.
Json make(const std::string& command, Json inputs);

Json word(const Word& w);
Json elements(Context& ctx, const std::vector<ElemId>& ids);
Json coeff(const Ring& r, Coeff c);

Json nucleus(Context& ctx);
Json danger(Context& ctx, const DangerReport& r);
Json cover_point(Context& ctx, const CoverPoint& p);
Json d0(Context& ctx, const D0Status& s);
Json cells(Context& ctx, const CompactOpenSet& u);
Json witness(Context& ctx, const SWitness& w);
Json simplicity(Context& ctx, const SimplicityReport& r);

}  // namespace ssg::report
