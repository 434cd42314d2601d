#include "mpent/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "mpent/types.hpp"

namespace mpent {

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

const std::string& csv_header() {
  static const std::string h =
      "command,label,kind,scope,alpha,value,expected,tolerance,tripartite,pair_ab,pair_ac,"
      "pair_bc,cut_a_bc,cut_b_ac,cut_ab_c,complete_gap,seed,converged";
  return h;
}

std::string csv_line(const CsvRow& r) {
  std::string s;
  for (const std::string* f : {&r.command, &r.label, &r.kind, &r.scope}) s += quote(*f) + ",";
  for (const auto* v : {&r.alpha, &r.value, &r.expected, &r.tolerance, &r.tripartite, &r.pair_ab,
                        &r.pair_ac, &r.pair_bc, &r.cut_a_bc, &r.cut_b_ac, &r.cut_ab_c,
                        &r.complete_gap})
    s += cell(*v) + ",";
  s += std::to_string(r.seed) + ",";
  s += r.converged ? "true" : "false";
  return s;
}

void append_csv(const std::string& path, const std::vector<CsvRow>& rows) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  if (fresh) out << csv_header() << "\n";
  for (const auto& r : rows) out << csv_line(r) << "\n";
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw UsageError("invalid log grid");
  std::vector<double> g(n);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
  g.back() = hi;
  return g;
}

void write_gap_svg(std::ostream& out, const GapCurve& curve) {
  if (curve.points.empty()) throw UsageError("empty gap curve");
  constexpr double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
  double xlo = curve.points.front().first, xhi = xlo;
  double ylo = 0.0, yhi = 0.0;
  for (const auto& [x, y] : curve.points) {
    xlo = std::min(xlo, x);
    xhi = std::max(xhi, x);
    if (std::isfinite(y)) {
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  }
  if (xhi <= xlo) xhi = xlo * 10.0;
  if (yhi - ylo < 1e-12) {
    yhi += 0.5;
    ylo -= 0.5;
  }
  const double pad = 0.05 * (yhi - ylo);
  ylo -= pad;
  yhi += pad;
  auto px = [&](double x) { return L + (W - L - R) * (std::log(x) - std::log(xlo)) / (std::log(xhi) - std::log(xlo)); };
  auto py = [&](double y) { return T + (H - T - B) * (yhi - y) / (yhi - ylo); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  auto label = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return std::string(buf);
  };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::string title = curve.title;
  for (auto [from, to] : {std::pair<std::string, std::string>{"&", "&amp;"}, {"<", "&lt;"}, {">", "&gt;"}}) {
    for (std::size_t p = 0; (p = title.find(from, p)) != std::string::npos; p += to.size())
      title.replace(p, from.size(), to);
  }
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">"
      << title << "</text>\n";
  out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\""
      << H - T - B << "\" fill=\"none\" stroke=\"black\"/>\n";
  // decade ticks
  for (double d = std::pow(10.0, std::floor(std::log10(xlo))); d <= xhi * 1.0001; d *= 10.0) {
    if (d < xlo * 0.9999) continue;
    const double x = px(d);
    out << "<line x1=\"" << num(x) << "\" y1=\"" << H - B << "\" x2=\"" << num(x) << "\" y2=\""
        << H - B + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << num(x) << "\" y=\"" << H - B + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << label(d)
        << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double v = ylo + (yhi - ylo) * i / 4.0;
    out << "<text x=\"" << L - 6 << "\" y=\"" << num(py(v) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << label(v)
        << "</text>\n";
  }
  out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">alpha (log scale)</text>\n"
      << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" transform=\"rotate(-90 16 " << (T + H - B) / 2
      << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">gap</text>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << num(py(0.0)) << "\" x2=\"" << W - R << "\" y2=\""
      << num(py(0.0)) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  bool first = true;
  for (const auto& [x, y] : curve.points) {
    if (!std::isfinite(y)) continue;
    if (!first) out << ' ';
    out << num(px(x)) << ',' << num(py(y));
    first = false;
  }
  out << "\"/>\n";
  if (curve.marker && *curve.marker >= xlo && *curve.marker <= xhi) {
    const double x = px(*curve.marker);
    out << "<line x1=\"" << num(x) << "\" y1=\"" << T << "\" x2=\"" << num(x) << "\" y2=\""
        << H - B << "\" stroke=\"firebrick\" stroke-dasharray=\"2 2\"/>\n";
  }
  out << "</svg>\n";
}

void write_gap_svg(const std::string& path, const GapCurve& curve) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  write_gap_svg(out, curve);
}

}  // namespace mpent
