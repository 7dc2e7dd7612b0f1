#include "pairorbit/io.hpp"
#include "pairorbit/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pairorbit {

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_svg(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

ConfigFile parse_config(const std::string& text) {
    ConfigFile cf;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        double num;
        try {
            size_t pos = 0;
            num = std::stod(val, &pos);
            if (pos != val.size())
                throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw Error("config line " + std::to_string(lineno) + ": bad number '" + val + "'");
        }
        if (!std::isfinite(num))
            throw Error("config line " + std::to_string(lineno) + ": non-finite value");

        std::optional<double>* slot = nullptr;
        if (key == "alpha") slot = &cf.alpha;
        else if (key == "x0") slot = &cf.x0;
        else if (key == "y0") slot = &cf.y0;
        else if (key == "h") slot = &cf.h;
        else if (key == "lambda") slot = &cf.lambda;
        else if (key == "q1") slot = &cf.q1;
        else if (key == "q2") slot = &cf.q2;
        else if (key == "X0") slot = &cf.X0;
        else if (key == "Y0") slot = &cf.Y0;
        else
            throw Error("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (slot->has_value())
            throw Error("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        *slot = num;
    }
    return cf;
}

ConfigFile parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw Error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const PhysConfig& cfg) {
    os << "t,x1,y1,x2,y2,X,Y,q1,q2,u,v,H,Lambda,KX,KY,LZ\n";
    for (const auto& s : traj.samples) {
        const FullState& st = s.state;
        const RelState rel = split_frames(st.x1, st.y1, st.x2, st.y2);
        const EllipticPoint e = q_to_elliptic(s.q, cfg);
        os << fmt_full(s.t) << ',' << fmt_full(st.x1) << ',' << fmt_full(st.y1) << ','
           << fmt_full(st.x2) << ',' << fmt_full(st.y2) << ',' << fmt_full(rel.X) << ','
           << fmt_full(rel.Y) << ',' << fmt_full(s.q.q1) << ',' << fmt_full(s.q.q2) << ','
           << fmt_full(e.u) << ',' << fmt_full(e.v) << ',' << fmt_full(s.monitors.H_rel)
           << ',' << fmt_full(s.monitors.Lambda_rel) << ',' << fmt_full(s.monitors.KX)
           << ',' << fmt_full(s.monitors.KY) << ',' << fmt_full(s.monitors.LZ) << '\n';
    }
}

std::string labels_joined(const std::vector<OrbitLabel>& labels) {
    std::string out;
    for (const OrbitLabel l : labels) {
        if (!out.empty())
            out += '+';
        out += label_name(l);
    }
    return out;
}

void write_diagram_csv(std::ostream& os, const DiagramScan& scan) {
    os << "h_a,lambda_a,label\n";
    for (int ih = 0; ih < scan.h_grid.count; ++ih) {
        for (int il = 0; il < scan.lambda_grid.count; ++il) {
            os << fmt_full(scan.h_grid.at(ih)) << ',' << fmt_full(scan.lambda_grid.at(il))
               << ',' << labels_joined(scan.at(ih, il)) << '\n';
        }
    }
}

void JsonWriter::comma() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!first_.empty()) {
        if (!first_.back())
            out_ += ',';
        first_.back() = false;
    }
}

JsonWriter& JsonWriter::begin_object() {
    comma();
    out_ += '{';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    comma();
    out_ += '[';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
    comma();
    out_ += '"';
    out_ += k;
    out_ += "\":";
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    comma();
    out_ += fmt_full(v);
    return *this;
}

JsonWriter& JsonWriter::value(int v) {
    comma();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    comma();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
    comma();
    out_ += '"';
    for (char c : v) {
        if (c == '"' || c == '\\')
            out_ += '\\';
        out_ += c;
    }
    out_ += '"';
    return *this;
}

} // namespace pairorbit
