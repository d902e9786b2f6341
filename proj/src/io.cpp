#include "collapse/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <json.hpp>
#include <sstream>

#include "collapse/error.hpp"

namespace collapse {

namespace {

using nlohmann::json;

std::string fmt(double x, int digits) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// Shortest %g form that reads back to the same double.
std::string exact(double x) {
  if (std::isinf(x)) return fmt(x, 17);
  for (int digits = 15; digits < 17; ++digits) {
    const std::string s = fmt(x, digits);
    if (std::strtod(s.c_str(), nullptr) == x) return s;
  }
  return fmt(x, 17);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& doc, const char* name) {
  if (!doc.is_object()) throw Error(Errc::parse_error, "expected a JSON object at the top level");
  const auto it = doc.find(name);
  if (it == doc.end()) throw Error(Errc::parse_error, std::string("missing field \"") + name + "\"");
  return *it;
}

double number_field(const json& value, const std::string& where) {
  if (!value.is_number()) throw Error(Errc::parse_error, "field \"" + where + "\" must be a number");
  return value.get<double>();
}

std::vector<double> number_array(const json& doc, const char* name) {
  const json& value = field(doc, name);
  if (!value.is_array()) throw Error(Errc::parse_error, std::string("field \"") + name + "\" must be an array of numbers");
  std::vector<double> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(number_field(value[i], std::string(name) + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, sep)) cells.push_back(cell);
  if (!line.empty() && line.back() == sep) cells.emplace_back();
  return cells;
}

bool parse_double(std::string cell, double& out) {
  cell.erase(std::remove_if(cell.begin(), cell.end(), [](unsigned char c) { return std::isspace(c); }), cell.end());
  if (cell.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stod(cell, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == cell.size();
}

std::vector<std::vector<double>> parse_numeric_rows(const std::string& text, bool allow_header) {
  std::vector<std::vector<double>> rows;
  std::istringstream is(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    bool numeric = true;
    for (const auto& cell : split(line, ',')) {
      double v = 0.0;
      if (!parse_double(cell, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (allow_header && rows.empty() && line_no == 1) continue;
      throw Error(Errc::parse_error, "line " + std::to_string(line_no) + " is not a row of numbers: " + line);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write " + path);
  out << contents;
  if (!out) throw Error(Errc::io_error, "failed writing " + path);
}

DistributionPair parse_pair_json(const std::string& text) {
  const json doc = parse_json(text);
  const auto p = number_array(doc, "p");
  const auto q = number_array(doc, "q");
  return collapse::make_pair(p, q);
}

std::string pair_to_json(const DistributionPair& pair) {
  json doc;
  doc["p"] = std::vector<double>(pair.p().probs().begin(), pair.p().probs().end());
  doc["q"] = std::vector<double>(pair.q().probs().begin(), pair.q().probs().end());
  return doc.dump();
}

ModeSpec parse_mode_spec_json(const std::string& text) {
  const json doc = parse_json(text);
  const json& centers = field(doc, "centers");
  if (!centers.is_array()) throw Error(Errc::parse_error, "field \"centers\" must be an array of [x, y] pairs");
  std::vector<std::array<double, 2>> points;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const std::string where = "centers[" + std::to_string(i) + "]";
    if (!centers[i].is_array() || centers[i].size() != 2) {
      throw Error(Errc::parse_error, "field \"" + where + "\" must be an [x, y] pair");
    }
    points.push_back({number_field(centers[i][0], where + "[0]"), number_field(centers[i][1], where + "[1]")});
  }
  const double stddev = number_field(field(doc, "std"), "std");
  const double quality = doc.contains("quality_x") ? number_field(doc["quality_x"], "quality_x") : 3.0;
  return ModeSpec(std::move(points), stddev, quality);
}

PiecewiseUniformPair parse_piecewise_json(const std::string& text) {
  const json doc = parse_json(text);
  return {number_array(doc, "breaks"), number_array(doc, "p"), number_array(doc, "q")};
}

void write_region_csv(std::ostream& out, const ModeCollapseRegion& region) {
  out << "epsilon,delta\n";
  for (const Vertex& v : region.vertices()) out << exact(v.epsilon) << ',' << exact(v.delta) << '\n';
}

ModeCollapseRegion parse_region_csv(const std::string& text) {
  std::vector<Vertex> vertices;
  for (const auto& row : parse_numeric_rows(text, true)) {
    if (row.size() != 2) throw Error(Errc::parse_error, "region rows need exactly epsilon,delta");
    vertices.push_back({row[0], row[1]});
  }
  return ModeCollapseRegion::from_vertices(std::move(vertices));
}

void write_band_csv(std::ostream& out, const EvolutionBand& band) {
  out << "m,lower,upper,feasible\n";
  for (const BandEntry& e : band.entries) {
    out << e.m << ',';
    if (e.feasible) out << fmt(e.lower, 12) << ',' << fmt(e.upper, 12) << ",true\n";
    else out << ",,false\n";
  }
}

void write_samples_csv(std::ostream& out, const SampleSet& samples) {
  if (samples.dim() == 1) {
    out << "x\n";
  } else if (samples.dim() == 2) {
    out << "x,y\n";
  } else {
    for (std::size_t d = 0; d < samples.dim(); ++d) out << (d ? "," : "") << 'x' << d + 1;
    out << '\n';
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto pt = samples.point(i);
    for (std::size_t d = 0; d < pt.size(); ++d) out << (d ? "," : "") << exact(pt[d]);
    out << '\n';
  }
}

SampleSet parse_samples_csv(const std::string& text) {
  const auto rows = parse_numeric_rows(text, true);
  if (rows.empty()) throw Error(Errc::too_few_samples, "sample file has no rows");
  const std::size_t dim = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw Error(Errc::dimension_mismatch, "sample row " + std::to_string(i + 1) + " has " +
                                                std::to_string(rows[i].size()) + " columns, expected " +
                                                std::to_string(dim));
    }
    coords.insert(coords.end(), rows[i].begin(), rows[i].end());
  }
  return SampleSet(dim, std::move(coords));
}

void write_estimate_csv(std::ostream& out, const RegionEstimate& estimate) {
  out << "alpha,p_mass,q_mass\n";
  for (const ThresholdPoint& pt : estimate.points) {
    out << exact(pt.alpha) << ',' << exact(pt.p_mass) << ',' << exact(pt.q_mass) << '\n';
  }
}

namespace {

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_svg_chart(std::ostream& out, const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<SvgSeries>& series) {
  constexpr double kWidth = 640.0;
  constexpr double kHeight = 480.0;
  constexpr double kMargin = 60.0;
  constexpr const char* kColors[] = {"#c0392b", "#2471a3", "#27ae60", "#8e44ad", "#d35400", "#17202a"};

  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
    }
  }
  if (!(x_hi > x_lo)) {
    x_lo = std::isfinite(x_lo) ? x_lo - 0.5 : 0.0;
    x_hi = x_lo + 1.0;
  }
  if (!(y_hi > y_lo)) {
    y_lo = std::isfinite(y_lo) ? y_lo - 0.5 : 0.0;
    y_hi = y_lo + 1.0;
  }
  const auto sx = [&](double x) { return kMargin + (x - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin); };
  const auto sy = [&](double y) { return kHeight - kMargin - (y - y_lo) / (y_hi - y_lo) * (kHeight - 2 * kMargin); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << xml_escape(title) << "</text>\n";
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin << "\" y2=\""
      << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\"" << kHeight - kMargin
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 20 << "\" text-anchor=\"middle\">" << xml_escape(x_label)
      << " [" << fmt(x_lo, 4) << ", " << fmt(x_hi, 4) << "]</text>\n";
  out << "<text x=\"16\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 16 " << kHeight / 2
      << ")\" text-anchor=\"middle\">" << xml_escape(y_label) << " [" << fmt(y_lo, 4) << ", " << fmt(y_hi, 4) << "]</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % std::size(kColors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      out << fmt(sx(s.x[i]), 6) << ',' << fmt(sy(s.y[i]), 6) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << kWidth - kMargin - 150 << "\" y=\"" << kMargin + 18.0 * static_cast<double>(k)
        << "\" fill=\"" << color << "\">" << xml_escape(s.name) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace collapse
