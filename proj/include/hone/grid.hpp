#pragma once

#include <string>
#include <vector>

#include "hone/series.hpp"

namespace hone {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

/// Full invariant suite over a generated (or cached) pair: recurrence
/// identity, growth term integrality, the 2n-term expansion identity at several depths, transform
/// value preservation, determinant identity, product-identity residual,
/// regime residuals.
VerifyReport verify_pair(const SeriesSpec& spec, const SequencePair& pair);

struct GridResult {
    std::string label;
    bool ok = false;
    std::string error;
    std::size_t depth = 0;
};

/// Independent per-spec verification kernel. `parallel` runs specs across
/// OpenMP threads; the serial path is the reference the parallel one is
/// tested and benchmarked against.
std::vector<GridResult> run_grid(const std::vector<SeriesSpec>& specs,
                                 bool parallel);

/// The standard grid: a in {-2,-1,1,2,3}, P in {X, X^2, X+X^3},
/// Q in {X, Y, XY, X^2+Y}, x1 = max(2, y1+1).
std::vector<SeriesSpec> standard_grid(std::size_t depth = 9);

std::string grid_label(const SeriesSpec& spec);

}  // namespace hone
