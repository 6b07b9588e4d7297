#pragma once

// Text formats produced by the command-line tool. Everything here is a pure
// function of its inputs, so repeated runs give byte-identical output.

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "typea/completeness.hpp"
#include "typea/geodesic.hpp"
#include "typea/moduli.hpp"
#include "typea/phase_portrait.hpp"

namespace typea {

using OrderedJson = nlohmann::ordered_json;

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);

OrderedJson verdict_json(const CompletenessVerdict& verdict);
OrderedJson solutions_json(const std::vector<LogGeodesicSolution>& solutions);
OrderedJson ricci_json(const ChristoffelSymbols& c, const RicciReport& report);

/// Header "t,x1,x2,v1,v2", one row per sample, then
/// "# termination=<reason> escape=<value|none>".
std::string trajectory_csv(const Trajectory& trajectory);
OrderedJson trajectory_json(const Trajectory& trajectory);

/// Header "u,v,du,dv".
std::string grid_csv(std::span<const GridRow> rows);
/// Header "curve,t,u,v".
std::string flow_curves_csv(std::span<const FlowCurve> curves);

/// Header "branch,t,sigma,psi" followed by a comment line on the segment.
std::string moduli_csv(std::span<const ModuliCurvePoint> points);

/// Writes through a sibling temporary file and renames it into place.
/// Throws InputDomain when the file cannot be written.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace typea
