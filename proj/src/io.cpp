#include "coshare/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "coshare/error.hpp"

namespace coshare::io {

namespace {

using nlohmann::json;

std::string dec(std::uint64_t v) { return std::to_string(v); }

std::uint64_t parse_u64(const json& j, const char* what) {
    if (!j.is_string())
        throw ValidationError(std::string(what) + " must be a decimal string");
    const std::string& s = j.get_ref<const std::string&>();
    if (s.empty() || s.size() > 20)
        throw ValidationError(std::string(what) + " is not a decimal integer: \"" + s + "\"");
    std::uint64_t value = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            throw ValidationError(std::string(what) + " is not a decimal integer: \"" + s + "\"");
        const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
        if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10)
            throw ValidationError(std::string(what) + " does not fit in 64 bits: \"" + s + "\"");
        value = value * 10 + digit;
    }
    return value;
}

std::uint32_t parse_u32(const json& j, const char* what) {
    const std::uint64_t v = parse_u64(j, what);
    if (v > std::numeric_limits<std::uint32_t>::max())
        throw ValidationError(std::string(what) + " does not fit in 32 bits");
    return static_cast<std::uint32_t>(v);
}

const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end())
        throw ValidationError(std::string("missing field \"") + name + "\"");
    return *it;
}

void check_version(const json& j) {
    const json& v = field(j, "version");
    if (!v.is_string() || v.get_ref<const std::string&>() != kFormatVersion)
        throw ValidationError("unsupported format version");
}

json parse_object(const std::string& text, const char* kind) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string(kind) + ": " + e.what());
    }
    if (!j.is_object()) throw ValidationError(std::string(kind) + ": not a JSON object");
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json u64_list(const std::vector<std::uint64_t>& values) {
    json arr = json::array();
    for (std::uint64_t v : values) arr.push_back(dec(v));
    return arr;
}

std::vector<std::uint64_t> parse_u64_list(const json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
    std::vector<std::uint64_t> out;
    out.reserve(j.size());
    for (const json& item : j) out.push_back(parse_u64(item, what));
    return out;
}

std::string parse_string(const json& j, const char* what) {
    if (!j.is_string()) throw ValidationError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

bool parse_bool(const json& j, const char* what) {
    if (!j.is_boolean()) throw ValidationError(std::string(what) + " must be a boolean");
    return j.get<bool>();
}

} // namespace

std::string serialize(const SchemeFile& doc) {
    json shares = json::array();
    for (const ShareRecord& s : doc.shares) {
        shares.push_back({{"x", dec(s.x)}, {"y", dec(s.y)}, {"common", s.common}});
    }
    return dump(json{{"version", kFormatVersion},
                     {"modulus", dec(doc.modulus)},
                     {"t", dec(doc.t)},
                     {"n", dec(doc.n)},
                     {"secret", dec(doc.secret)},
                     {"coeffs", u64_list(doc.coeffs)},
                     {"crossover_x", u64_list(doc.crossover_x)},
                     {"shares", shares}});
}

std::string serialize(const CrossoverFile& doc) {
    json points = json::array();
    for (const CrossoverPoint& pt : doc.points) {
        points.push_back({{"x", dec(pt.x)}, {"y", dec(pt.y)}});
    }
    return dump(json{{"version", kFormatVersion},
                     {"modulus", dec(doc.modulus)},
                     {"points", points},
                     {"source", doc.source}});
}

std::string serialize(const PlanFile& doc) {
    json schemes = json::array();
    for (const PlanScheme& s : doc.schemes) {
        schemes.push_back(
            {{"t", dec(s.t)}, {"n", dec(s.n)}, {"secret", dec(s.secret)}, {"label", s.label}});
    }
    return dump(json{{"version", kFormatVersion},
                     {"modulus", dec(doc.modulus)},
                     {"u", dec(doc.u)},
                     {"crossover_x", u64_list(doc.crossover_x)},
                     {"schemes", schemes}});
}

std::string serialize(const ShareFile& doc) {
    return dump(json{{"version", kFormatVersion},
                     {"modulus", dec(doc.modulus)},
                     {"x", dec(doc.x)},
                     {"y", dec(doc.y)},
                     {"common", doc.common}});
}

SchemeFile parse_scheme_file(const std::string& text) {
    const json j = parse_object(text, "scheme file");
    check_version(j);
    SchemeFile doc;
    doc.modulus = parse_u64(field(j, "modulus"), "modulus");
    doc.t = parse_u32(field(j, "t"), "t");
    doc.n = parse_u32(field(j, "n"), "n");
    doc.secret = parse_u64(field(j, "secret"), "secret");
    doc.coeffs = parse_u64_list(field(j, "coeffs"), "coeffs");
    doc.crossover_x = parse_u64_list(field(j, "crossover_x"), "crossover_x");
    const json& shares = field(j, "shares");
    if (!shares.is_array()) throw ValidationError("shares must be an array");
    for (const json& s : shares) {
        if (!s.is_object()) throw ValidationError("share entry must be an object");
        doc.shares.push_back({parse_u64(field(s, "x"), "share x"),
                              parse_u64(field(s, "y"), "share y"),
                              parse_bool(field(s, "common"), "share common")});
    }
    return doc;
}

CrossoverFile parse_crossover_file(const std::string& text) {
    const json j = parse_object(text, "crossover file");
    check_version(j);
    CrossoverFile doc;
    doc.modulus = parse_u64(field(j, "modulus"), "modulus");
    const json& points = field(j, "points");
    if (!points.is_array()) throw ValidationError("points must be an array");
    for (const json& pt : points) {
        if (!pt.is_object()) throw ValidationError("point entry must be an object");
        doc.points.push_back(
            {parse_u64(field(pt, "x"), "point x"), parse_u64(field(pt, "y"), "point y")});
    }
    doc.source = parse_string(field(j, "source"), "source");
    return doc;
}

PlanFile parse_plan_file(const std::string& text) {
    const json j = parse_object(text, "plan file");
    check_version(j);
    PlanFile doc;
    doc.modulus = parse_u64(field(j, "modulus"), "modulus");
    doc.u = parse_u32(field(j, "u"), "u");
    doc.crossover_x = parse_u64_list(field(j, "crossover_x"), "crossover_x");
    const json& schemes = field(j, "schemes");
    if (!schemes.is_array()) throw ValidationError("schemes must be an array");
    for (const json& s : schemes) {
        if (!s.is_object()) throw ValidationError("scheme entry must be an object");
        doc.schemes.push_back({parse_u32(field(s, "t"), "t"), parse_u32(field(s, "n"), "n"),
                               parse_u64(field(s, "secret"), "secret"),
                               parse_string(field(s, "label"), "label")});
    }
    return doc;
}

ShareFile parse_share_file(const std::string& text) {
    const json j = parse_object(text, "share file");
    check_version(j);
    ShareFile doc;
    doc.modulus = parse_u64(field(j, "modulus"), "modulus");
    doc.x = parse_u64(field(j, "x"), "x");
    doc.y = parse_u64(field(j, "y"), "y");
    doc.common = parse_bool(field(j, "common"), "common");
    return doc;
}

CrossoverSet to_crossover_set(const CrossoverFile& doc) {
    const PrimeModulus m{doc.modulus};
    CrossoverSet set{{}, doc.source};
    set.points.reserve(doc.points.size());
    for (const CrossoverPoint& pt : doc.points) {
        set.points.emplace_back(FieldElement{pt.x, m}, FieldElement{pt.y, m});
        if (pt.x == 0)
            throw ValidationError("crossover position x = 0 is reserved for the secret");
    }
    return set;
}

CrossoverFile from_crossover_set(const CrossoverSet& set, PrimeModulus modulus) {
    CrossoverFile doc{modulus.value(), {}, set.source_scheme};
    doc.points.reserve(set.points.size());
    for (const Point& pt : set.points) {
        if (pt.modulus() != modulus)
            throw ValidationError("crossover point from a different field");
        doc.points.push_back({pt.x().value(), pt.y().value()});
    }
    return doc;
}

CollaborationPlan to_plan(const PlanFile& doc) {
    const PrimeModulus m{doc.modulus};
    CollaborationPlan plan{{}, doc.u, doc.crossover_x, m};
    plan.schemes.reserve(doc.schemes.size());
    for (const PlanScheme& s : doc.schemes) {
        plan.schemes.emplace_back(s.t, s.n, FieldElement{s.secret, m}, s.label);
    }
    return plan;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << content;
    if (!out) throw ValidationError("write failed for " + path.string());
}

} // namespace coshare::io
