#pragma once

#include <complex>
#include <string_view>

namespace resonance::cli {

/// Parses "RE+IMi", "RE-IMi", "IMi", a plain real, "r@THETArad" or
/// "r@Xpi" (argument X in units of pi). A bare "r@THETA" is rejected.
/// Throws std::invalid_argument with the offending text.
std::complex<double> parse_complex(std::string_view text);

}  // namespace resonance::cli
