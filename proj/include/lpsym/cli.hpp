#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "lpsym/batch.hpp"

namespace lpsym::cli {

/// Seed used when neither --seed nor LPSYM_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 12345;
/// Sample count used when --n is not given.
inline constexpr std::size_t kDefaultSamples = 2500;

/// General format with 17 significant digits, trailing zeros dropped; round-trips every double.
std::string format_double(double v);

/// Header line then one LF-terminated row per sample.
void write_csv(std::ostream& out, const std::vector<std::string>& header, const SampleBatch& batch);

/// Parses args (without the program name) and dispatches. Returns 0 on
/// success, 1 when verify finds failing checks or sampling fails at run time,
/// 2 on usage or parameter errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpsym::cli
