// Command-line front end: generate sequences, transform them to continued
// fractions, estimate irrationality exponents, analyze growth, evaluate the
// series, and verify the invariant suite.
//
// Exit codes: 0 success, 2 spec validation failure, 3 resource cap hit,
// 4 invariant failure in verify.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hone/asymptotics.hpp"
#include "hone/cf.hpp"
#include "hone/config.hpp"
#include "hone/exponent.hpp"
#include "hone/grid.hpp"
#include "hone/series.hpp"

namespace {

using hone::RunConfig;
using nlohmann::json;

constexpr int kExitSpec = 2;
constexpr int kExitResource = 3;
constexpr int kExitInvariant = 4;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream os(out_path);
        if (!os) throw std::runtime_error("cannot write " + out_path);
        os << text << "\n";
    }
}

hone::SequencePair obtain_pair(const RunConfig& cfg,
                               std::vector<std::string>* warnings) {
    std::filesystem::create_directories(cfg.cache_dir);
    const std::string path = hone::cache_path(cfg.cache_dir, cfg.spec);
    hone::SequencePair pair;
    if (hone::load_cache(path, cfg.spec, &pair)) return pair;
    pair = hone::build_sequences(cfg.spec, warnings);
    hone::save_cache(path, cfg.spec, pair);
    return pair;
}

int cmd_gen(const RunConfig& cfg, const std::string& out) {
    std::vector<std::string> warnings;
    const hone::SequencePair pair = obtain_pair(cfg, &warnings);
    json j;
    j["format_version"] = 1;
    j["cache_file"] = hone::cache_path(cfg.cache_dir, cfg.spec);
    j["depth"] = pair.depth();
    j["truncated"] = pair.truncated;
    json digits = json::array();
    for (std::size_t n = 0; n <= pair.depth(); ++n)
        digits.push_back({{"n", n}, {"digits", hone::digit_count(pair.xs[n])}});
    j["x_digit_counts"] = std::move(digits);
    j["warnings"] = warnings;
    emit(j.dump(2), out);
    return pair.truncated ? kExitResource : 0;
}

int cmd_cf(const RunConfig& cfg, const std::string& out) {
    const hone::SequencePair pair = obtain_pair(cfg, nullptr);
    const hone::GeneralCF cf =
        hone::equivalence_transform(hone::series_to_cf(pair, pair.depth()), pair);
    json j = json::parse(hone::cf_to_json(cf));
    j["convergents"] =
        json::parse(hone::convergents_to_json(hone::convergents(cf)))["convergents"];
    emit(j.dump(2), out);
    return 0;
}

int cmd_estimate(const RunConfig& cfg, const std::string& cf_file,
                 const std::string& out) {
    if (!cf_file.empty()) {
        // Bypass mode: exponent estimates for an externally supplied integer CF.
        std::ifstream is(cf_file);
        if (!is) throw hone::SpecError("cannot open CF file " + cf_file);
        std::ostringstream buf;
        buf << is.rdbuf();
        const hone::GeneralCF cf = hone::cf_from_json(buf.str());
        const auto est = hone::estimate_mu_cf(cf);
        json j;
        j["format_version"] = 1;
        json arr = json::array();
        for (const auto& [n, v] : est) arr.push_back({{"n", n}, {"value", v}});
        j["mu_cf_est"] = std::move(arr);
        j["mu_cf_running"] = hone::running_limsup(est);
        emit(j.dump(2), out);
        return 0;
    }
    const hone::SequencePair pair = obtain_pair(cfg, nullptr);
    const hone::ExponentReport rep = hone::analyze_exponent(cfg.spec, pair);
    emit(cfg.output_format == "csv" ? hone::report_to_csv(rep)
                                    : hone::report_to_json(rep),
         out);
    return 0;
}

int cmd_asym(const RunConfig& cfg, const std::string& out) {
    const hone::SequencePair pair = obtain_pair(cfg, nullptr);
    const hone::AsymptoticsReport rep = hone::analyze_sequence(cfg.spec, pair);
    emit(cfg.output_format == "csv" ? hone::residuals_to_csv(rep)
                                    : hone::asym_report_to_json(rep),
         out);
    return 0;
}

int cmd_eval(const RunConfig& cfg, const std::string& out) {
    const hone::SequencePair pair = obtain_pair(cfg, nullptr);
    const hone::DecimalResult dec =
        hone::decimal_of_sigma(pair, cfg.precision_digits);
    const hone::CertifiedRcf rcf = hone::certified_rcf(pair, pair.depth() - 1);
    json j;
    j["format_version"] = 1;
    j["sigma_decimal"] = dec.decimal;
    j["precision_digits"] = cfg.precision_digits;
    j["error_bound"] = dec.error_bound;
    j["series_terms_used"] = dec.used_depth;
    json digs = json::array();
    for (std::size_t i = 0; i < rcf.digits.size(); ++i)
        digs.push_back({{"digit", hone::to_string(rcf.digits[i])},
                        {"certified", i < rcf.certified}});
    j["rcf_digits"] = std::move(digs);
    j["rcf_certified_count"] = rcf.certified;
    emit(j.dump(2), out);
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& out) {
    const hone::SequencePair pair = obtain_pair(cfg, nullptr);
    const hone::VerifyReport rep = hone::verify_pair(cfg.spec, pair);
    json j;
    j["format_version"] = 1;
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = std::move(checks);
    j["all_pass"] = rep.all_pass();
    emit(j.dump(2), out);
    return rep.all_pass() ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Hone series: exact sequences, continued "
                 "fractions, and irrationality exponent estimates"};
    app.require_subcommand(1);

    std::string config_path, out_path, format, cf_file;
    long depth_override = -1;

    app.add_option("--config", config_path, "JSON config file")->required();
    app.add_option("--depth", depth_override, "override config depth");
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format, "json|csv (overrides config)");

    auto* gen = app.add_subcommand("gen", "generate sequences into the cache");
    auto* cf = app.add_subcommand("cf", "export the integer continued fraction");
    auto* est = app.add_subcommand("estimate", "irrationality exponent report");
    est->add_option("--cf-file", cf_file,
                    "estimate from an exported CF file instead of a spec");
    auto* asym = app.add_subcommand("asym", "growth constants and residuals");
    auto* ev = app.add_subcommand("eval", "decimal value and certified RCF prefix");
    auto* ver = app.add_subcommand("verify", "run the invariant suite");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = hone::load_config(config_path);
        if (depth_override >= 0) cfg.spec.depth = static_cast<std::size_t>(depth_override);
        if (!format.empty()) cfg.output_format = format;
        if (const char* env = std::getenv("HONE_CACHE_DIR")) cfg.cache_dir = env;
        cfg.validate();

        if (gen->parsed()) return cmd_gen(cfg, out_path);
        if (cf->parsed()) return cmd_cf(cfg, out_path);
        if (est->parsed()) return cmd_estimate(cfg, cf_file, out_path);
        if (asym->parsed()) return cmd_asym(cfg, out_path);
        if (ev->parsed()) return cmd_eval(cfg, out_path);
        if (ver->parsed()) return cmd_verify(cfg, out_path);
    } catch (const hone::SpecError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return kExitSpec;
    } catch (const hone::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kExitResource;
    } catch (const hone::InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
