#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "coshare/collab.hpp"

namespace coshare::io {

// Canonical JSON documents exchanged between dealers and participants.
// Every document carries the format version and the field modulus, and
// every integer is a decimal string so nothing is lost at large p.
// Serialization is canonical (sorted keys, fixed indentation), so equal
// values always produce identical bytes.
inline constexpr const char* kFormatVersion = "1";

struct ShareRecord {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    bool common = false;

    friend bool operator==(const ShareRecord&, const ShareRecord&) = default;
};

// A dealer's full private record: curve, crossover choice, share list.
struct SchemeFile {
    std::uint64_t modulus = 0;
    std::uint32_t t = 0;
    std::uint32_t n = 0;
    std::uint64_t secret = 0;
    std::vector<std::uint64_t> coeffs; // constant term first
    std::vector<std::uint64_t> crossover_x;
    std::vector<ShareRecord> shares;

    friend bool operator==(const SchemeFile&, const SchemeFile&) = default;
};

struct CrossoverPoint {
    std::uint64_t x = 0;
    std::uint64_t y = 0;

    friend bool operator==(const CrossoverPoint&, const CrossoverPoint&) = default;
};

// What one dealer hands the next: the crossover points and nothing
// else. Deliberately contains no secret and no coefficients.
struct CrossoverFile {
    std::uint64_t modulus = 0;
    std::vector<CrossoverPoint> points;
    std::string source;

    friend bool operator==(const CrossoverFile&, const CrossoverFile&) = default;
};

struct PlanScheme {
    std::uint32_t t = 0;
    std::uint32_t n = 0;
    std::uint64_t secret = 0;
    std::string label;

    friend bool operator==(const PlanScheme&, const PlanScheme&) = default;
};

// A whole collaboration described in one document.
struct PlanFile {
    std::uint64_t modulus = 0;
    std::uint32_t u = 0;
    std::vector<std::uint64_t> crossover_x;
    std::vector<PlanScheme> schemes;

    friend bool operator==(const PlanFile&, const PlanFile&) = default;
};

// A single participant's share.
struct ShareFile {
    std::uint64_t modulus = 0;
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    bool common = false;

    friend bool operator==(const ShareFile&, const ShareFile&) = default;
};

std::string serialize(const SchemeFile& doc);
std::string serialize(const CrossoverFile& doc);
std::string serialize(const PlanFile& doc);
std::string serialize(const ShareFile& doc);

// Parsers throw ValidationError on any malformed input: broken JSON,
// missing fields, unsupported version, non-decimal integer strings.
SchemeFile parse_scheme_file(const std::string& text);
CrossoverFile parse_crossover_file(const std::string& text);
PlanFile parse_plan_file(const std::string& text);
ShareFile parse_share_file(const std::string& text);

// Domain adapters.
CrossoverSet to_crossover_set(const CrossoverFile& doc);
CrossoverFile from_crossover_set(const CrossoverSet& set, PrimeModulus modulus);
CollaborationPlan to_plan(const PlanFile& doc);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace coshare::io
