#include "hetbeam/figures.hpp"

#include <map>
#include <stdexcept>

#include "hetbeam/errors.hpp"

namespace hetbeam::report {

using csv::cell;

csv::Table summary_table(const std::vector<RunRecord>& runs) {
  csv::Table t({"scenario_id", "scheme", "error_mu", "velocity", "theta", "mean_throughput_bps",
                "outage_fraction"});
  for (const auto& r : runs) {
    t.add_row({r.scenario_id, cell(to_string(r.cell.scheme)), cell(r.cell.error_mu),
               cell(r.cell.velocity), cell(r.theta_deg), cell(r.mean_throughput_bps),
               cell(r.outage_fraction)});
  }
  return t;
}

csv::Table intervals_table(const std::vector<AlignmentInterval>& intervals) {
  csv::Table t({"beam_index", "t_start", "t_end", "outage", "mean_snr_db", "bits"});
  for (const auto& iv : intervals) {
    t.add_row({cell(iv.beam_index), cell(iv.t_start), cell(iv.t_end), cell(iv.outage),
               cell(iv.mean_snr_db), cell(iv.bits)});
  }
  return t;
}

csv::Table trajectory_table(const std::vector<VehicleState>& states) {
  csv::Table t({"t", "x", "y", "heading", "speed", "yaw_rate"});
  for (const auto& s : states) {
    t.add_row({cell(s.timestamp), cell(s.pos.x), cell(s.pos.y), cell(s.heading_deg),
               cell(s.speed), cell(s.yaw_rate_dps)});
  }
  return t;
}

csv::Table sensitivity_table(const std::vector<analysis::SensitivityResult>& rows) {
  csv::Table t({"axis", "error_m", "coefficient", "method"});
  for (const auto& r : rows) {
    t.add_row({cell(analysis::to_string(r.axis)), cell(r.error_value), cell(r.coefficient),
               cell(analysis::to_string(r.method))});
  }
  return t;
}

csv::Table optimum_table(const std::vector<analysis::BeamwidthOptimum>& optima) {
  csv::Table t({"error_mu", "theta_star_deg", "expected_rate_bps"});
  for (const auto& o : optima) {
    t.add_row({cell(o.error_mu), cell(o.theta_star_deg), cell(o.expected_rate_bps)});
  }
  return t;
}

csv::Table optimum_grid_table(const std::vector<analysis::BeamwidthOptimum>& optima) {
  csv::Table t({"error_mu", "theta_deg", "expected_rate_bps"});
  for (const auto& o : optima) {
    for (std::size_t i = 0; i < o.search_grid.size(); ++i) {
      t.add_row({cell(o.error_mu), cell(o.search_grid[i]), cell(o.grid_rates[i])});
    }
  }
  return t;
}

csv::Table overhead_csv(const std::vector<overhead::OverheadRow>& rows) {
  csv::Table t({"n_stations", "t_sls", "t_rx", "t_bc", "t_total", "fraction_of_bi"});
  for (const auto& r : rows) {
    t.add_row({cell(r.n_stations), cell(r.t_sls), cell(r.t_rx), cell(r.t_bc), cell(r.t_total),
               cell(r.fraction_of_bi)});
  }
  return t;
}

namespace {

struct Reader {
  const csv::Table& t;
  const std::vector<std::string>* row = nullptr;

  double num(std::string_view name) const {
    return csv::parse_number((*row)[csv::column(t, name)]);
  }
  const std::string& text(std::string_view name) const { return (*row)[csv::column(t, name)]; }
};

template <class F>
void for_rows(const std::filesystem::path& file, F&& f) {
  if (!std::filesystem::exists(file)) return;
  const csv::Table t = csv::read(file);
  Reader r{t};
  for (const auto& row : t.rows()) {
    r.row = &row;
    f(r);
  }
}

analysis::ErrorAxis axis_from(const std::string& s) {
  if (s == "x_e") return analysis::ErrorAxis::x;
  if (s == "y_e") return analysis::ErrorAxis::y;
  throw std::runtime_error("unknown axis " + s);
}

}  // namespace

ResultSet load_results(const std::filesystem::path& dir) {
  ResultSet rs;
  for_rows(dir / "overhead.csv", [&](const Reader& r) {
    rs.overhead.push_back({static_cast<int>(r.num("n_stations")), r.num("t_sls"), r.num("t_rx"),
                           r.num("t_bc"), r.num("t_total"), r.num("fraction_of_bi")});
  });
  for_rows(dir / "summary.csv", [&](const Reader& r) {
    RunRecord rec;
    rec.scenario_id = r.text("scenario_id");
    rec.cell.scheme = scheme_from_string(r.text("scheme"));
    rec.cell.error_mu = r.num("error_mu");
    rec.cell.velocity = r.num("velocity");
    rec.theta_deg = r.num("theta");
    rec.mean_throughput_bps = r.num("mean_throughput_bps");
    rec.outage_fraction = r.num("outage_fraction");
    rs.runs.push_back(rec);
  });
  for_rows(dir / "sensitivity.csv", [&](const Reader& r) {
    const auto method = r.text("method") == "analytic"
                            ? analysis::DerivativeMethod::analytic
                            : analysis::DerivativeMethod::finite_difference;
    rs.sensitivity.push_back({axis_from(r.text("axis")), r.num("error_m"), r.num("coefficient"),
                              method});
  });
  std::map<double, std::size_t> by_mu;
  for_rows(dir / "optimum.csv", [&](const Reader& r) {
    analysis::BeamwidthOptimum o;
    o.error_mu = r.num("error_mu");
    o.theta_star_deg = r.num("theta_star_deg");
    o.expected_rate_bps = r.num("expected_rate_bps");
    by_mu[o.error_mu] = rs.optima.size();
    rs.optima.push_back(o);
  });
  for_rows(dir / "optimum_grid.csv", [&](const Reader& r) {
    const auto it = by_mu.find(r.num("error_mu"));
    if (it == by_mu.end()) return;
    auto& o = rs.optima[it->second];
    o.search_grid.push_back(r.num("theta_deg"));
    o.grid_rates.push_back(r.num("expected_rate_bps"));
  });
  return rs;
}

Figure figure_from_number(int number) {
  switch (number) {
    case 2: return Figure::overhead;
    case 6: return Figure::throughput;
    case 7: return Figure::sensitivity;
    case 8: return Figure::beamwidth;
    default: throw InvalidParameter("figure must be one of 2, 6, 7, 8");
  }
}

std::string figure_filename(Figure figure) {
  return "fig" + std::to_string(static_cast<int>(figure)) + ".csv";
}

csv::Table emit_figure(const ResultSet& results, Figure figure) {
  switch (figure) {
    case Figure::overhead: {
      if (results.overhead.empty()) throw MissingAnalysis("no overhead rows; run `overhead` first");
      csv::Table t({"n_vehicles", "overhead_ms", "fraction_of_bi"});
      t.add_comment("x: stations contending for training per beacon interval");
      t.add_comment("y: beamforming training time per BI (ms) and its share of the BI");
      for (const auto& r : results.overhead) {
        t.add_row({cell(r.n_stations), cell(r.t_total * 1e3), cell(r.fraction_of_bi)});
      }
      return t;
    }
    case Figure::throughput: {
      if (results.runs.empty()) throw MissingAnalysis("no sweep runs; run `sweep` first");
      csv::Table t({"scheme", "error_mu", "velocity", "theta", "mean_throughput_bps",
                    "std_throughput_bps", "mean_outage_fraction", "replications"});
      t.add_comment("x: vehicle speed (m/s); one series per scheme and GPS error mean (m)");
      t.add_comment("y: mean throughput over replications (bit/s), sample std as error bar");
      for (const auto& s : summarize(results.runs)) {
        t.add_row({cell(to_string(s.cell.scheme)), cell(s.cell.error_mu), cell(s.cell.velocity),
                   cell(s.theta_deg), cell(s.mean_throughput_bps), cell(s.std_throughput_bps),
                   cell(s.mean_outage_fraction), cell(s.replications)});
      }
      return t;
    }
    case Figure::sensitivity: {
      if (results.sensitivity.empty()) {
        throw MissingAnalysis("no sensitivity rows; run `sensitivity` first");
      }
      csv::Table t = sensitivity_table(results.sensitivity);
      t.add_comment("x: position error on one axis (m), the other axis held at 0");
      t.add_comment("y: derivative of the per-beam data volume (bit/m)");
      return t;
    }
    case Figure::beamwidth: {
      bool have_grid = !results.optima.empty();
      for (const auto& o : results.optima) have_grid = have_grid && !o.search_grid.empty();
      if (!have_grid) throw MissingAnalysis("no beamwidth optimisation; run `optimize` first");
      csv::Table t({"theta_deg", "expected_capacity_bps", "error_mu", "optimum"});
      t.add_comment("x: beamwidth (deg); one curve per GPS error mean (m)");
      t.add_comment("y: expected capacity (bit/s); optimum=1 marks the refined argmax");
      for (const auto& o : results.optima) {
        for (std::size_t i = 0; i < o.search_grid.size(); ++i) {
          t.add_row({cell(o.search_grid[i]), cell(o.grid_rates[i]), cell(o.error_mu), "0"});
        }
        t.add_row({cell(o.theta_star_deg), cell(o.expected_rate_bps), cell(o.error_mu), "1"});
      }
      return t;
    }
  }
  throw InvalidParameter("unknown figure");
}

}  // namespace hetbeam::report
