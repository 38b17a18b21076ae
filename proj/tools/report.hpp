#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "resonance/spectral.hpp"

namespace resonance::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// printf "%.17g"; non-finite values print as inf, -inf or nan.
std::string format_double(double v);

/// Pretty-printed JSON with every floating-point number as %.17g and
/// non-finite numbers as null.
void write_json(std::ostream& out, const Json& doc);

Json complex_json(std::complex<double> z);
Json spectrum_json(const SpectrumMultiset& s);
Json match_json(const MatchReport& report, double tol);

/// Header "set,re,im,modulus,mult,block"; computed rows first.
void write_spectrum_csv(std::ostream& out, const SpectrumMultiset& computed, const SpectrumMultiset& theoretical);

/// Scatter of both sets over the unit disk with a 10% margin.
void write_spectrum_svg(std::ostream& out, const SpectrumMultiset& computed, const SpectrumMultiset& theoretical,
                        const std::vector<std::string>& legend);

}  // namespace resonance::cli
