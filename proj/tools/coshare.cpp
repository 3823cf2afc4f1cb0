// coshare -- collaborative Shamir threshold schemes over one prime field.
//
// The subcommands mirror the multi-dealer workflow: agree on a modulus,
// let the first dealer cut a curve and hand out crossover points, let
// every later dealer thread a curve through them, then list shares,
// reconstruct secrets and plot the curves.
//
// Exit codes: 0 success, 2 usage error, 3 validation error,
// 4 construction failure (resample budget exhausted / no filler freedom).

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coshare/collab.hpp"
#include "coshare/error.hpp"
#include "coshare/io.hpp"
#include "coshare/plot.hpp"

namespace {

using namespace coshare;

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitConstruction = 4;

std::uint64_t parse_u64_or_throw(const std::string& s, const std::string& what) {
    std::uint64_t value = 0;
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw ValidationError(what + " is not a decimal integer: \"" + s + "\"");
    return value;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("COLLAB_SEED"))
        return parse_u64_or_throw(env, "COLLAB_SEED");
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::vector<std::uint64_t> parse_comma_list(const std::string& s, const std::string& what) {
    std::vector<std::uint64_t> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t comma = s.find(',', start);
        const std::size_t end = comma == std::string::npos ? s.size() : comma;
        out.push_back(parse_u64_or_throw(s.substr(start, end - start), what));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

// Share positions of one scheme: the crossover positions plus the n-u
// smallest free positive positions.
std::vector<io::ShareRecord> share_records(const Polynomial& poly, std::uint32_t n,
                                           const std::vector<std::uint64_t>& crossover_x) {
    const PrimeModulus m = poly.modulus();
    std::set<std::uint64_t> common(crossover_x.begin(), crossover_x.end());
    std::vector<std::uint64_t> positions(crossover_x.begin(), crossover_x.end());
    std::uint64_t x = 1;
    while (positions.size() < n) {
        if (x >= m.value())
            throw ValidationError("not enough distinct share positions below the modulus");
        if (!common.contains(x)) positions.push_back(x);
        ++x;
    }
    std::sort(positions.begin(), positions.end());

    std::vector<io::ShareRecord> records;
    records.reserve(n);
    for (std::uint64_t pos : positions) {
        const FieldElement fx{pos, m};
        records.push_back({pos, poly.eval(fx).value(), common.contains(pos)});
    }
    return records;
}

io::SchemeFile make_scheme_file(const SchemeParams& params, const Polynomial& poly,
                                const std::vector<std::uint64_t>& crossover_x) {
    io::SchemeFile doc;
    doc.modulus = params.modulus().value();
    doc.t = params.t();
    doc.n = params.n();
    doc.secret = params.secret().value();
    doc.coeffs = poly.coefficient_values();
    doc.crossover_x = crossover_x;
    std::sort(doc.crossover_x.begin(), doc.crossover_x.end());
    doc.shares = share_records(poly, params.n(), crossover_x);
    return doc;
}

struct ModulusArgs {
    std::vector<std::uint64_t> secrets;
    std::vector<std::uint64_t> ns;
    std::string format = "text";
};

int run_modulus(const ModulusArgs& args) {
    if (args.secrets.empty() && args.ns.empty()) {
        std::cerr << "modulus: pass at least one --secret or --n\n";
        return kExitUsage;
    }
    const PrimeModulus m = choose_modulus(args.secrets, args.ns);
    if (args.format == "json")
        std::cout << "{\"modulus\": \"" << m.value() << "\"}\n";
    else
        std::cout << m.value() << "\n";
    return 0;
}

struct DealFirstArgs {
    std::uint32_t t = 0;
    std::uint32_t n = 0;
    std::uint64_t secret = 0;
    std::uint64_t modulus = 0;
    std::string label = "scheme-1";
    std::optional<std::uint32_t> crossover_count;
    std::vector<std::uint64_t> crossover_x;
    std::optional<std::uint64_t> seed;
    std::string pin_coefficients;
    std::string out_scheme;
    std::string out_crossover;
};

int run_deal_first(const DealFirstArgs& args) {
    const PrimeModulus m{args.modulus};
    const SchemeParams params{args.t, args.n, FieldElement{args.secret, m}, args.label};

    std::vector<std::uint64_t> xs = args.crossover_x;
    if (args.crossover_count) {
        for (std::uint64_t x = 1; x <= *args.crossover_count; ++x) xs.push_back(x);
    }
    if (xs.size() > params.t())
        throw ValidationError("crossover count u = " + std::to_string(xs.size()) +
                              " exceeds threshold t = " + std::to_string(params.t()));
    if (xs.size() == params.t())
        std::cerr << "warning: u = t, the common participants alone can reconstruct this "
                     "secret\n";

    Polynomial poly = [&] {
        if (!args.pin_coefficients.empty()) {
            std::vector<std::uint64_t> coeffs{params.secret().value()};
            const auto pinned = parse_comma_list(args.pin_coefficients, "--pin-coefficients");
            if (pinned.size() != params.t() - 1u)
                throw ValidationError("--pin-coefficients needs exactly t - 1 values");
            coeffs.insert(coeffs.end(), pinned.begin(), pinned.end());
            if (params.t() >= 2 && coeffs.back() == 0)
                throw ValidationError("pinned leading coefficient must be nonzero");
            return Polynomial{m, std::move(coeffs)};
        }
        SeededRandomSource rng{resolve_seed(args.seed)};
        return sample_polynomial(params.secret(), params.t() - 1, rng).poly;
    }();

    const CrossoverSet crossover = [&] {
        for (std::uint64_t x : xs) {
            if (x < 1 || x > params.n())
                throw ValidationError("crossover position x = " + std::to_string(x) +
                                      " is outside the share range 1.." +
                                      std::to_string(params.n()));
        }
        return pick_crossover(poly, xs, params.label());
    }();

    io::write_file(args.out_scheme, io::serialize(make_scheme_file(params, poly, xs)));
    io::write_file(args.out_crossover, io::serialize(io::from_crossover_set(crossover, m)));
    return 0;
}

struct DealNextArgs {
    std::uint32_t t = 0;
    std::uint32_t n = 0;
    std::uint64_t secret = 0;
    std::optional<std::uint64_t> modulus;
    std::string crossover_file;
    std::optional<std::uint64_t> seed;
    std::string pin_filler;
    bool pin_no_filler = false;
    std::string out_scheme;
};

int run_deal_next(const DealNextArgs& args) {
    const io::CrossoverFile file = io::parse_crossover_file(io::read_file(args.crossover_file));
    if (args.modulus && *args.modulus != file.modulus)
        throw ValidationError("--modulus " + std::to_string(*args.modulus) +
                              " does not match the crossover file modulus " +
                              std::to_string(file.modulus));
    const PrimeModulus m{file.modulus};
    const SchemeParams params{args.t, args.n, FieldElement{args.secret, m}};
    const CrossoverSet crossover = io::to_crossover_set(file);

    std::vector<std::uint64_t> xs;
    for (const Point& pt : crossover.points) {
        if (pt.x().value() > params.n())
            throw ValidationError("crossover position x = " + std::to_string(pt.x().value()) +
                                  " is outside the share range 1.." + std::to_string(params.n()));
        xs.push_back(pt.x().value());
    }

    Polynomial poly = [&] {
        if (!args.pin_filler.empty() || args.pin_no_filler) {
            std::vector<std::uint64_t> filler;
            if (!args.pin_filler.empty())
                filler = parse_comma_list(args.pin_filler, "--pin-filler");
            return construct_followup_pinned(params, crossover, filler);
        }
        SeededRandomSource rng{resolve_seed(args.seed)};
        return construct_followup(params, crossover, {}, rng).poly;
    }();

    io::write_file(args.out_scheme, io::serialize(make_scheme_file(params, poly, xs)));
    return 0;
}

struct SharesArgs {
    std::string scheme_file;
    std::string format = "text";
    std::string out_dir;
};

int run_shares(const SharesArgs& args) {
    const io::SchemeFile doc = io::parse_scheme_file(io::read_file(args.scheme_file));
    if (args.format == "json") {
        std::cout << "[";
        for (std::size_t i = 0; i < doc.shares.size(); ++i) {
            const io::ShareRecord& s = doc.shares[i];
            std::cout << (i == 0 ? "" : ",") << "\n  {\"x\": \"" << s.x << "\", \"y\": \"" << s.y
                      << "\", \"common\": " << (s.common ? "true" : "false") << "}";
        }
        std::cout << "\n]\n";
    } else {
        for (const io::ShareRecord& s : doc.shares) {
            std::cout << "(" << s.x << ", " << s.y << ")" << (s.common ? " COMMON" : "") << "\n";
        }
    }
    if (!args.out_dir.empty()) {
        std::filesystem::create_directories(args.out_dir);
        for (const io::ShareRecord& s : doc.shares) {
            const io::ShareFile share{doc.modulus, s.x, s.y, s.common};
            io::write_file(std::filesystem::path(args.out_dir) /
                               ("share-x" + std::to_string(s.x) + ".json"),
                           io::serialize(share));
        }
    }
    return 0;
}

struct ReconstructArgs {
    std::uint32_t t = 0;
    std::uint64_t modulus = 0;
    std::vector<std::string> pairs;
    std::vector<std::string> share_files;
    std::string format = "text";
};

int run_reconstruct(const ReconstructArgs& args) {
    const PrimeModulus m{args.modulus};
    std::vector<Share> shares;
    for (const std::string& pair : args.pairs) {
        const std::size_t colon = pair.find(':');
        if (colon == std::string::npos) {
            std::cerr << "reconstruct: share \"" << pair << "\" is not of the form x:y\n";
            return kExitUsage;
        }
        shares.emplace_back(
            FieldElement{parse_u64_or_throw(pair.substr(0, colon), "share x"), m},
            FieldElement{parse_u64_or_throw(pair.substr(colon + 1), "share y"), m});
    }
    for (const std::string& path : args.share_files) {
        const io::ShareFile file = io::parse_share_file(io::read_file(path));
        if (file.modulus != m.value())
            throw ValidationError("share file modulus " + std::to_string(file.modulus) +
                                  " does not match --modulus " + std::to_string(m.value()));
        shares.emplace_back(FieldElement{file.x, m}, FieldElement{file.y, m});
    }
    const FieldElement secret = reconstruct(args.t, m, shares);
    if (args.format == "json")
        std::cout << "{\"secret\": \"" << secret.value() << "\"}\n";
    else
        std::cout << secret.value() << "\n";
    return 0;
}

struct PlotArgs {
    std::vector<std::string> scheme_files;
    std::string out;
    std::string format = "svg";
};

int run_plot(const PlotArgs& args) {
    std::vector<plot::Curve> curves;
    for (const std::string& path : args.scheme_files) {
        const io::SchemeFile doc = io::parse_scheme_file(io::read_file(path));
        const PrimeModulus m{doc.modulus};
        curves.push_back(
            {std::filesystem::path(path).stem().string(), Polynomial{m, doc.coeffs}});
    }
    const std::string rendered =
        args.format == "points" ? plot::render_points_table(curves) : plot::render_svg(curves);
    io::write_file(args.out, rendered);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"collaborative Shamir threshold schemes with shared crossover points"};
    app.require_subcommand(1);

    ModulusArgs modulus_args;
    CLI::App* cmd_modulus = app.add_subcommand(
        "modulus", "choose the smallest prime fitting every secret and scheme size");
    cmd_modulus->add_option("--secret", modulus_args.secrets, "a secret value (repeatable)");
    cmd_modulus->add_option("--n", modulus_args.ns, "a scheme size (repeatable)");
    cmd_modulus->add_option("--format", modulus_args.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    DealFirstArgs first_args;
    CLI::App* cmd_first = app.add_subcommand(
        "deal-first", "construct the first curve and emit its crossover points");
    cmd_first->add_option("--t", first_args.t, "threshold")->required();
    cmd_first->add_option("--n", first_args.n, "participant count")->required();
    cmd_first->add_option("--secret", first_args.secret, "secret value")->required();
    cmd_first->add_option("--modulus", first_args.modulus, "agreed prime")->required();
    cmd_first->add_option("--label", first_args.label, "scheme label");
    auto* opt_count = cmd_first->add_option("--crossover-count", first_args.crossover_count,
                                            "use crossover positions 1..count");
    cmd_first->add_option("--crossover-x", first_args.crossover_x,
                          "explicit crossover position (repeatable)")
        ->excludes(opt_count);
    cmd_first->add_option("--seed", first_args.seed, "random seed");
    cmd_first->add_option("--pin-coefficients", first_args.pin_coefficients,
                          "fix the t-1 non-constant coefficients, comma-separated");
    cmd_first->add_option("--out-scheme", first_args.out_scheme, "scheme file to write")
        ->required();
    cmd_first->add_option("--out-crossover", first_args.out_crossover,
                          "crossover file to write")
        ->required();

    DealNextArgs next_args;
    CLI::App* cmd_next = app.add_subcommand(
        "deal-next", "construct a follow-up curve through received crossover points");
    cmd_next->add_option("--t", next_args.t, "threshold")->required();
    cmd_next->add_option("--n", next_args.n, "participant count")->required();
    cmd_next->add_option("--secret", next_args.secret, "secret value")->required();
    cmd_next->add_option("--modulus", next_args.modulus,
                         "agreed prime (checked against the crossover file)");
    cmd_next->add_option("--crossover-file", next_args.crossover_file,
                         "crossover file from the previous dealer")
        ->required();
    cmd_next->add_option("--seed", next_args.seed, "random seed");
    cmd_next->add_option("--pin-filler", next_args.pin_filler,
                         "fix the filler y values, comma-separated");
    cmd_next->add_flag("--pin-no-filler", next_args.pin_no_filler,
                       "single deterministic attempt with zero filler points");
    cmd_next->add_option("--out-scheme", next_args.out_scheme, "scheme file to write")
        ->required();

    SharesArgs shares_args;
    CLI::App* cmd_shares =
        app.add_subcommand("shares", "list a scheme's share ledger, marking common shares");
    cmd_shares->add_option("scheme-file", shares_args.scheme_file, "scheme file")->required();
    cmd_shares->add_option("--format", shares_args.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd_shares->add_option("--out-dir", shares_args.out_dir,
                           "also write one share file per participant into this directory");

    ReconstructArgs rec_args;
    CLI::App* cmd_rec = app.add_subcommand("reconstruct", "recover a secret from shares");
    cmd_rec->add_option("--t", rec_args.t, "threshold")->required();
    cmd_rec->add_option("--modulus", rec_args.modulus, "agreed prime")->required();
    cmd_rec->add_option("shares", rec_args.pairs, "shares as x:y pairs");
    cmd_rec->add_option("--share-file", rec_args.share_files, "share file (repeatable)");
    cmd_rec->add_option("--format", rec_args.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    PlotArgs plot_args;
    CLI::App* cmd_plot =
        app.add_subcommand("plot", "render one period of each curve with crossover markers");
    cmd_plot->add_option("scheme-files", plot_args.scheme_files, "scheme files")->required();
    cmd_plot->add_option("--out", plot_args.out, "output path")->required();
    cmd_plot->add_option("--format", plot_args.format, "svg|points")
        ->check(CLI::IsMember({"svg", "points"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (cmd_modulus->parsed()) return run_modulus(modulus_args);
        if (cmd_first->parsed()) return run_deal_first(first_args);
        if (cmd_next->parsed()) return run_deal_next(next_args);
        if (cmd_shares->parsed()) return run_shares(shares_args);
        if (cmd_rec->parsed()) return run_reconstruct(rec_args);
        if (cmd_plot->parsed()) return run_plot(plot_args);
    } catch (const ConstructionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConstruction;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
