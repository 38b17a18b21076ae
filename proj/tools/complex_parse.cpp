#include "complex_parse.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace resonance::cli {

namespace {

[[noreturn]] void fail(std::string_view text, const char* why) {
  throw std::invalid_argument("cannot parse complex number '" + std::string(text) + "': " + why);
}

double parse_real(std::string_view whole, std::string_view part) {
  if (!part.empty() && part.front() == '+') part.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
  if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) fail(whole, "malformed number");
  if (!std::isfinite(v)) fail(whole, "non-finite value");
  return v;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::complex<double> parse_complex(std::string_view text) {
  if (text.empty()) fail(text, "empty");

  if (const auto at = text.find('@'); at != std::string_view::npos) {
    const double r = parse_real(text, text.substr(0, at));
    std::string_view arg = text.substr(at + 1);
    double theta = 0.0;
    if (ends_with(arg, "pi")) {
      arg.remove_suffix(2);
      theta = parse_real(text, arg) * std::numbers::pi;
    } else if (ends_with(arg, "rad")) {
      arg.remove_suffix(3);
      theta = parse_real(text, arg);
    } else {
      fail(text, "polar argument needs a unit suffix, 'rad' or 'pi'");
    }
    if (r < 0.0) fail(text, "negative modulus");
    return std::polar(r, theta);
  }

  if (text.back() != 'i') return {parse_real(text, text), 0.0};

  std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_real(text, body)};
  const std::string_view im = body.substr(split);
  if (im.size() == 1) fail(text, "missing imaginary magnitude");
  return {parse_real(text, body.substr(0, split)), parse_real(text, im)};
}

}  // namespace resonance::cli
