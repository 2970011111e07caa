#pragma once

#include <string>

#include "hone/cf.hpp"
#include "hone/series.hpp"

namespace hone {

struct RunConfig {
    SeriesSpec spec;
    int precision_digits = 30;
    std::string output_format = "json";
    std::string cache_dir = ".hone-cache";

    void validate() const;
};

/// Parses the JSON config document. Polynomials come as coefficient lists
/// (P, index = degree) and a dense matrix (Q, beta[i][j]); big integers may
/// be given as numbers or decimal strings.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

std::string cf_to_json(const GeneralCF& cf);
GeneralCF cf_from_json(const std::string& json_text);
std::string convergents_to_json(const std::vector<Convergent>& cs);

struct DecimalResult {
    std::string decimal;     // sigma to `digits` places, truncated toward zero
    std::string error_bound; // exact rational bound on |sigma - printed value|
    std::size_t used_depth = 0;
};

/// Decimal expansion of sigma from sigma_{N} with N = depth-1, so the tail
/// bound 2|y_{N+1}|/x_{N+1} is available. Throws ResourceError naming the
/// shortfall when the tail bound exceeds 10^-digits.
DecimalResult decimal_of_sigma(const SequencePair& pair, int digits);

}  // namespace hone
