#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "collapse/bounds.hpp"
#include "collapse/distribution.hpp"
#include "collapse/ganview.hpp"
#include "collapse/metrics.hpp"
#include "collapse/piecewise.hpp"
#include "collapse/region.hpp"
#include "collapse/samples.hpp"

namespace collapse {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

/// {"p": [..], "q": [..]} summing to 1 within 1e-9. ParseError names the field.
DistributionPair parse_pair_json(const std::string& text);
std::string pair_to_json(const DistributionPair& pair);

/// {"centers": [[x, y], ..], "std": s, "quality_x": 3}; quality_x optional.
ModeSpec parse_mode_spec_json(const std::string& text);

/// {"breaks": [..], "p": [..], "q": [..]} piecewise-constant densities.
PiecewiseUniformPair parse_piecewise_json(const std::string& text);

/// Header `epsilon,delta`, one vertex per row.
void write_region_csv(std::ostream& out, const ModeCollapseRegion& region);
ModeCollapseRegion parse_region_csv(const std::string& text);

/// Header `m,lower,upper,feasible`; infeasible rows leave lower and upper empty.
void write_band_csv(std::ostream& out, const EvolutionBand& band);

/// Header `x,y` for 2-D sets (`x` for 1-D, `x1,..,xd` otherwise).
void write_samples_csv(std::ostream& out, const SampleSet& samples);
/// Rows of comma-separated reals; a non-numeric first row is a header.
SampleSet parse_samples_csv(const std::string& text);

/// Header `alpha,p_mass,q_mass`.
void write_estimate_csv(std::ostream& out, const RegionEstimate& estimate);

struct SvgSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Single-file line chart of the series on shared axes.
void write_svg_chart(std::ostream& out, const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<SvgSeries>& series);

}  // namespace collapse
