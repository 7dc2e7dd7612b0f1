#pragma once

#include "pairorbit/classify.hpp"
#include "pairorbit/dynamics.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pairorbit {

/// Numbers in CSV/JSON outputs are written with 17 significant digits, enough
/// to round-trip any double exactly.
std::string fmt_full(double v);
/// Compact formatting for SVG geometry (deterministic, locale-independent).
std::string fmt_svg(double v);

/// Key-value problem file: one `key = value` per line, `#` comments and blank
/// lines ignored. Core keys: alpha, x0, y0, h, lambda. Optional extras carry
/// the relative start point and center of mass: q1, q2, X0, Y0.
struct ConfigFile {
    std::optional<double> alpha, x0, y0, h, lambda;
    std::optional<double> q1, q2, X0, Y0;
};

/// Parses config text; throws Error with a line-numbered message on unknown
/// keys, duplicate keys or malformed lines.
ConfigFile parse_config(const std::string& text);
ConfigFile parse_config_file(const std::string& path);

/// Trajectory CSV, one row per sample:
/// t,x1,y1,x2,y2,X,Y,q1,q2,u,v,H,Lambda,KX,KY,LZ
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const PhysConfig& cfg);

/// Diagram CSV with columns h_a,lambda_a,label (multi-label cells joined by '+').
void write_diagram_csv(std::ostream& os, const DiagramScan& scan);

/// Minimal JSON emitter for the CLI's flat records (snake_case keys, numbers
/// at 17 significant digits).
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& v);
    const std::string& str() const { return out_; }

private:
    void comma();
    std::string out_;
    std::vector<bool> first_; // per nesting level
    bool pending_key_ = false;
};

std::string labels_joined(const std::vector<OrbitLabel>& labels);

} // namespace pairorbit
