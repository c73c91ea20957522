#pragma once

#include "radproj/analysis.hpp"
#include "radproj/config.hpp"
#include "radproj/pipeline.hpp"
#include "radproj/point_set.hpp"
#include "radproj/radial.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace radproj {

using Json = nlohmann::ordered_json;

/// Writes `# key: value` comment lines.
void write_comment_header(std::ostream& os, const KeyValues& lines);

/// Provenance lines shared by every output: artifact version, command,
/// result-defining config and generator record.
KeyValues provenance_lines(const std::string& command, const RunConfig& cfg, const Provenance* gen);

/// Exact kind: x1_a,x1_b,x2_a,x2_b,module. Others: x,y. With a mask, a
/// trailing `visible` column is added and every point is written.
void write_points_csv(std::ostream& os, const PointSet& ps, const std::vector<char>* mask = nullptr);

void write_histogram_csv(std::ostream& os, const SpacingHistogram& h);
void write_gaps_csv(std::ostream& os, const GapList& gl);

GapList read_gaps_csv(std::istream& is, const std::string& source = "<gaps>");
SpacingHistogram read_histogram_csv(std::istream& is, const std::string& source = "<histogram>");

enum class TableKind { Gaps, Histogram, TailFitJson, Unknown };
/// Classifies a file by its first non-comment content.
TableKind detect_table(const std::string& path);

Json to_json(const TailFit& fit);
TailFit tail_fit_from_json(const Json& j);
Json to_json(const Comparison& c);
Json to_json(const PipelineSummary& s);
Json config_json(const RunConfig& cfg);
Json provenance_json(const Provenance& p);

/// Full pipeline report.
Json pipeline_json(const RunConfig& cfg, const PipelineResult& r);

/// Two-space indented JSON followed by a newline.
void write_json(std::ostream& os, const Json& j);

} // namespace radproj
