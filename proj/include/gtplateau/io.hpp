#pragma once

#include <string>
#include <vector>

#include "gtplateau/patch.hpp"

namespace gtp {

/// Net file: {"m": 3, "n": 3, "points": [[[x,y,z] | null, ...], ...], "fixed": [[bool, ...], ...]}.
/// points[i][j] is P_ij (i along u). Without "fixed", a point is free exactly when it is
/// null. With "fixed", nulls are allowed only at free entries (they read as zero).
/// `source` names the input in error messages.
ControlNet parse_net_json(const std::string& text, const std::string& source = "<input>");
ControlNet read_net_json(const std::string& path);

/// Free points are written as coordinates when `free_as_null` is false, with an explicit mask.
std::string net_to_json(const ControlNet& net, bool free_as_null = false);

/// Shortest round-trip decimal form.
std::string format_double(double x);

/// Wavefront OBJ: vertices in mesh order, 1-based faces, no normals.
std::string mesh_to_obj(const TriangleMesh& mesh);

/// CSV with header u,v,H,E,F,G; invalid samples carry nan for H.
std::string curvature_to_csv(const std::vector<FundamentalForms>& grid);

/// CSV with header iteration,best_value.
std::string history_to_csv(const std::vector<double>& history);

std::string read_text_file(const std::string& path);

/// Writes via a temporary sibling file and rename. Throws IoError.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace gtp
