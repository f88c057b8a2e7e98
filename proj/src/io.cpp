#include "dispkit/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "dispkit/errors.hpp"

namespace dispkit {
namespace {

std::string loc(const std::string& name, std::size_t line) {
    return name + ":" + std::to_string(line) + ": ";
}

// Splits the raw file into lines, requiring the trailing newline. Keeps the
// 1-based line number of each line.
std::vector<std::pair<std::size_t, std::string>> content_lines(const std::string& raw,
                                                               const std::string& name) {
    if (raw.empty()) throw input_error(name + ": empty file");
    if (raw.back() != '\n') throw input_error(name + ": missing trailing newline");
    std::vector<std::pair<std::size_t, std::string>> lines;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos < raw.size()) {
        std::size_t nl = raw.find('\n', pos);
        std::string line = raw.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        lines.emplace_back(lineno, line);
    }
    return lines;
}

double parse_double(const std::string& tok, const std::string& name, std::size_t line) {
    const char* s = tok.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || *end != '\0')
        throw input_error(loc(name, line) + "expected a number, got '" + tok + "'");
    return v;
}

std::string slurp(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void append_array(std::string& out, const std::vector<double>& v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += fmt17(v[i]);
    }
    out += ']';
}

std::vector<double> double_array(const nlohmann::json& j, const char* key, int d,
                                 const std::string& name, std::size_t line) {
    if (!j.contains(key) || !j[key].is_array())
        throw input_error(loc(name, line) + "missing array '" + key + "'");
    std::vector<double> v = j[key].get<std::vector<double>>();
    if (static_cast<int>(v.size()) != d)
        throw input_error(loc(name, line) + "'" + std::string(key) + "' must have " +
                          std::to_string(d) + " entries");
    return v;
}

}  // namespace

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

PointSet read_point_set(std::istream& in, const std::string& name) {
    auto lines = content_lines(slurp(in), name);
    if (lines.empty()) throw input_error(name + ": missing 'd n' header");

    std::istringstream head(lines[0].second);
    long d = 0, n = 0;
    if (!(head >> d >> n) || !(head >> std::ws).eof())
        throw input_error(loc(name, lines[0].first) + "header must be 'd n'");
    if (d < 1 || d > 64) throw input_error(loc(name, lines[0].first) + "dimension out of range");
    if (n < 0) throw input_error(loc(name, lines[0].first) + "negative point count");
    if (static_cast<long>(lines.size()) - 1 != n)
        throw input_error(name + ": header promises " + std::to_string(n) + " points, file has " +
                          std::to_string(lines.size() - 1));

    PointSet P;
    P.d = static_cast<int>(d);
    P.coords.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
    for (long r = 0; r < n; ++r) {
        const auto& [lineno, text] = lines[static_cast<std::size_t>(r) + 1];
        std::istringstream row(text);
        std::string tok;
        long got = 0;
        while (row >> tok) {
            double v = parse_double(tok, name, lineno);
            if (!std::isfinite(v) || v < 0.0 || v > 1.0)
                throw input_error(loc(name, lineno) + "coordinate " + tok +
                                  " outside [0,1]");
            P.coords.push_back(v);
            ++got;
        }
        if (got != d)
            throw input_error(loc(name, lineno) + "expected " + std::to_string(d) +
                              " coordinates, got " + std::to_string(got));
    }
    P.validate();
    return P;
}

PointSet read_point_set_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error(path + ": cannot open");
    return read_point_set(in, path);
}

void write_point_set(std::ostream& out, const PointSet& P) {
    out << P.d << ' ' << P.size() << '\n';
    for (int j = 0; j < static_cast<int>(P.size()); ++j) {
        for (int i = 0; i < P.d; ++i) {
            if (i) out << ' ';
            out << fmt17(P.at(j, i));
        }
        out << '\n';
    }
}

void write_point_set_file(const std::string& path, const PointSet& P) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error(path + ": cannot open for writing");
    write_point_set(out, P);
    out.flush();
    if (!out) throw input_error(path + ": write failed");
}

void write_net(std::ostream& out, const Net& net) {
    std::string line;
    line += "{\"format\":\"dispkit-net\",\"version\":1,\"d\":";
    line += std::to_string(net.params.d);
    line += ",\"eps\":" + fmt17(net.params.eps);
    line += ",\"gamma\":" + fmt17(net.params.gamma);
    line += ",\"delta0\":" + fmt17(net.params.delta0);
    line += ",\"delta\":" + fmt17(net.params.delta);
    line += ",\"kind\":\"";
    line += net_kind_name(net.kind);
    line += "\",\"count\":" + std::to_string(net.elements.size()) + "}\n";
    out << line;
    for (const NetElement& e : net.elements) {
        line.clear();
        line += "{\"anchor\":";
        append_array(line, e.anchor);
        line += ",\"sides\":";
        append_array(line, e.sides);
        line += e.periodic ? ",\"periodic\":true" : ",\"periodic\":false";
        line += ",\"source\":" + std::to_string(e.source);
        line += ",\"k\":[";
        for (std::size_t i = 0; i < e.shift.size(); ++i) {
            if (i) line += ',';
            line += std::to_string(e.shift[i]);
        }
        line += "]}\n";
        out << line;
    }
}

void write_net_file(const std::string& path, const Net& net) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error(path + ": cannot open for writing");
    write_net(out, net);
    out.flush();
    if (!out) throw input_error(path + ": write failed");
}

Net read_net(std::istream& in, const std::string& name) {
    auto lines = content_lines(slurp(in), name);
    if (lines.empty()) throw input_error(name + ": missing net header");

    nlohmann::json head;
    try {
        head = nlohmann::json::parse(lines[0].second);
    } catch (const nlohmann::json::exception& e) {
        throw input_error(loc(name, lines[0].first) + e.what());
    }
    if (!head.is_object() || head.value("format", "") != "dispkit-net")
        throw input_error(loc(name, lines[0].first) + "not a dispkit-net file");
    if (head.value("version", 0) != 1)
        throw input_error(loc(name, lines[0].first) + "unsupported net file version");

    Net net;
    try {
        net.params.d = head.at("d").get<int>();
        net.params.eps = head.at("eps").get<double>();
        net.params.gamma = head.at("gamma").get<double>();
        net.params.delta0 = head.at("delta0").get<double>();
        net.params.delta = head.at("delta").get<double>();
        net.kind = net_kind_from_name(head.at("kind").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw input_error(loc(name, lines[0].first) + e.what());
    }
    if (net.params.d < 1) throw input_error(loc(name, lines[0].first) + "bad dimension");
    net.params.c_d = 1.0 - 1.0 / net.params.d;
    const auto count = head.value("count", std::uint64_t{0});
    if (lines.size() - 1 != count)
        throw input_error(name + ": header promises " + std::to_string(count) +
                          " elements, file has " + std::to_string(lines.size() - 1));

    const bool periodic_kind = net.kind == NetKind::torus;
    net.elements.reserve(count);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto& [lineno, text] = lines[r];
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw input_error(loc(name, lineno) + e.what());
        }
        NetElement e;
        e.anchor = double_array(j, "anchor", net.params.d, name, lineno);
        e.sides = double_array(j, "sides", net.params.d, name, lineno);
        e.periodic = j.value("periodic", false);
        if (e.periodic != periodic_kind)
            throw input_error(loc(name, lineno) + "periodic flag contradicts net kind");
        e.source = j.value("source", -1);
        if (j.contains("k") && j["k"].is_array())
            e.shift = j["k"].get<std::vector<std::int32_t>>();
        net.elements.push_back(std::move(e));
    }
    return net;
}

Net read_net_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error(path + ": cannot open");
    return read_net(in, path);
}

}  // namespace dispkit
