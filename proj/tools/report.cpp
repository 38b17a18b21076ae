#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace resonance::cli {

namespace {

void write_value(std::ostream& out, const Json& v, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad << Json(it.key()).dump() << ": ";
        write_value(out, it.value(), depth + 1);
      }
      out << "\n" << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      bool first = true;
      for (const auto& item : v) {
        if (!first) out << ",\n";
        first = false;
        out << pad;
        write_value(out, item, depth + 1);
      }
      out << "\n" << close_pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      out << (std::isfinite(d) ? format_double(d) : "null");
      return;
    }
    default:
      out << v.dump();
  }
}

std::string fixed(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_json(std::ostream& out, const Json& doc) {
  write_value(out, doc, 0);
  out << "\n";
}

Json complex_json(std::complex<double> z) {
  Json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

Json spectrum_json(const SpectrumMultiset& s) {
  Json arr = Json::array();
  for (const auto& e : s.entries) {
    Json j;
    j["re"] = e.value.real();
    j["im"] = e.value.imag();
    j["mult"] = e.multiplicity;
    j["block"] = e.provenance;
    arr.push_back(std::move(j));
  }
  return arr;
}

Json match_json(const MatchReport& report, double tol) {
  Json j;
  j["tolerance"] = tol;
  j["matched"] = report.matched.size();
  j["max_distance"] = report.max_distance;
  Json missing = Json::array();
  for (const auto& z : report.missing_theoretical) missing.push_back(complex_json(z));
  Json spurious = Json::array();
  for (const auto& z : report.spurious_computed) spurious.push_back(complex_json(z));
  j["missing_theoretical"] = std::move(missing);
  j["spurious_computed"] = std::move(spurious);
  j["ok"] = report.ok();
  return j;
}

void write_spectrum_csv(std::ostream& out, const SpectrumMultiset& computed, const SpectrumMultiset& theoretical) {
  out << "set,re,im,modulus,mult,block\n";
  const auto rows = [&out](const char* set, const SpectrumMultiset& s) {
    for (const auto& e : s.entries) {
      out << set << ',' << format_double(e.value.real()) << ',' << format_double(e.value.imag()) << ','
          << format_double(std::abs(e.value)) << ',' << e.multiplicity << ',' << e.provenance << '\n';
    }
  };
  rows("computed", computed);
  rows("theoretical", theoretical);
}

void write_spectrum_svg(std::ostream& out, const SpectrumMultiset& computed, const SpectrumMultiset& theoretical,
                        const std::vector<std::string>& legend) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"-1.1 -1.1 2.2 2.2\">\n"
      << "<rect x=\"-1.1\" y=\"-1.1\" width=\"2.2\" height=\"2.2\" fill=\"white\"/>\n"
      << "<line x1=\"-1.1\" y1=\"0\" x2=\"1.1\" y2=\"0\" stroke=\"#cccccc\" stroke-width=\"0.003\"/>\n"
      << "<line x1=\"0\" y1=\"-1.1\" x2=\"0\" y2=\"1.1\" stroke=\"#cccccc\" stroke-width=\"0.003\"/>\n"
      << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.004\"/>\n"
      << "<g transform=\"scale(1,-1)\">\n";
  for (const auto& e : theoretical.entries) {
    out << "<circle cx=\"" << fixed(e.value.real()) << "\" cy=\"" << fixed(e.value.imag())
        << "\" r=\"0.018\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"0.004\"/>\n";
  }
  for (const auto& e : computed.entries) {
    out << "<circle cx=\"" << fixed(e.value.real()) << "\" cy=\"" << fixed(e.value.imag())
        << "\" r=\"0.009\" fill=\"#1f77b4\"/>\n";
  }
  out << "</g>\n"
      << "<g font-family=\"sans-serif\" font-size=\"0.05\">\n"
      << "<circle cx=\"-1.05\" cy=\"-1.035\" r=\"0.009\" fill=\"#1f77b4\"/>\n"
      << "<text x=\"-1.02\" y=\"-1.02\">computed</text>\n"
      << "<circle cx=\"-1.05\" cy=\"-0.975\" r=\"0.018\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"0.004\"/>\n"
      << "<text x=\"-1.02\" y=\"-0.96\">theoretical</text>\n";
  double y = -0.90;
  for (const auto& line : legend) {
    out << "<text x=\"-1.07\" y=\"" << fixed(y) << "\">" << xml_escape(line) << "</text>\n";
    y += 0.06;
  }
  out << "</g>\n</svg>\n";
}

}  // namespace resonance::cli
