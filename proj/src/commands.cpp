#include "optiverse/commands.hpp"

#include "optiverse/csv.hpp"
#include "optiverse/errors.hpp"
#include "optiverse/svg_plot.hpp"

#include <cmath>
#include <sstream>

namespace optiverse {

namespace {

namespace fs = std::filesystem;

class OutputSet
{
public:
  explicit OutputSet(ExperimentConfig const &config) : config_(config), dir_(config.output.directory) {}

  void write(std::string const &suffix, std::string const &contents)
  {
    fs::path const p = dir_ / (config_.output.run + suffix);
    write_file_atomic(p, contents);
    result.files.push_back(p);
  }

  void plot(std::string const &suffix, PlotSpec const &spec)
  {
    if (config_.output.emit_plots)
      write(suffix, svg_line_plot(spec));
  }

  CommandResult finish()
  {
    write(".effective.cfg", effective_config(config_));
    return std::move(result);
  }

  CommandResult result;

private:
  ExperimentConfig const &config_;
  fs::path dir_;
};

} // namespace

CellDesign design_from_config(ExperimentConfig const &config)
{
  return design_cell(config.spacetime, config.cell.L, config.cell.grid_size, config.cell.theta, config.cell.C,
                     config.cell.profile_form);
}

double cell_delta_phi(ExperimentConfig const &config)
{
  auto const &s = config.spacetime;
  if (s.kind == SpacetimeKind::Min)
    return 0.0;
  if (s.kind == SpacetimeKind::dS && config.cell.profile_form == ProfileForm::quadratic)
    return phase_difference_closed(s.H, config.cell.L, config.probe.lambda0);
  IndexProfile const p = axial_profile(s, config.cell.L, config.cell.grid_size, config.cell.profile_form);
  return optical_phase(p, config.probe.lambda0).delta_phi;
}

std::string index_csv(CellDesign const &d)
{
  std::vector<std::string> header{"z_m", "n"};
  if (d.intensity)
    header.emplace_back("I");
  if (d.transmission)
    header.emplace_back("T");
  CsvTable t(header);
  for (Eigen::Index i = 0; i < d.profile.size(); ++i) {
    auto row = t.add_row();
    row << d.profile.position(i) << d.profile.n(i);
    if (d.intensity)
      row << (*d.intensity)(i);
    if (d.transmission)
      row << (*d.transmission)(i);
  }
  return t.str();
}

std::string phase_csv(ExperimentConfig const &config)
{
  CsvTable t({"H", "L", "lambda0", "delta_phi_rad", "delta_phi_over_pi", "method"});
  double const L = config.cell.L;
  double const lambda0 = config.probe.lambda0;
  auto emit = [&](SpacetimeSpec const &spec) {
    bool const quadratic_ds = spec.kind == SpacetimeKind::dS && config.cell.profile_form == ProfileForm::quadratic;
    if (quadratic_ds || spec.kind == SpacetimeKind::Min) {
      double const d = spec.kind == SpacetimeKind::Min ? 0.0 : phase_difference_closed(spec.H, L, lambda0);
      t.add_row() << spec.H << L << lambda0 << d << d / pi << to_string(PhaseMethod::closed_form);
    }
    PhaseResult const q =
      optical_phase(axial_profile(spec, L, config.cell.grid_size, config.cell.profile_form), lambda0);
    t.add_row() << spec.H << L << lambda0 << q.delta_phi << q.delta_phi / pi << to_string(q.method);
  };

  if (config.run.sweep == SweepKind::hubble) {
    Sweep const s = config.sweep(0.0);
    for (int i = 0; i < s.steps; ++i) {
      double const hl = i == s.steps - 1 ? s.to : s.from + (s.to - s.from) * i / (s.steps - 1);
      emit(SpacetimeSpec::de_sitter(hl / L));
    }
  } else {
    emit(config.spacetime);
  }
  return t.str();
}

std::string fringe_csv(FringeScan const &scan)
{
  CsvTable t({"sweep_value", "delta_phi_rad", "p_plus", "p_minus", "counts_plus", "counts_minus"});
  for (auto const &r : scan.rows)
    t.add_row() << r.sweep_value << r.stats.delta_phi << r.stats.p_plus << r.stats.p_minus << r.stats.counts_plus
                << r.stats.counts_minus;
  return t.str();
}

std::string fringe_metadata(ExperimentConfig const &config, FringeScan const &scan)
{
  MZIConfig const m = config.mzi();
  std::ostringstream os;
  os << "scheme = " << to_string(m.scheme) << '\n';
  if (m.scheme == Scheme::I)
    os << "scheme_note = verbatim (2 +- sqrt(2 + 2 cos(delta_phi - piezo))) / 4\n";
  if (m.scheme == Scheme::joint)
    os << "joint_medium = " << to_string(m.medium) << "\njoint_eta = " << format_exact(m.eta) << '\n';
  os << "sweep_kind = " << to_string(scan.kind) << '\n';
  os << "sweep_value_unit = " << (scan.kind == SweepKind::piezo ? "rad (piezo phase)" : "H*L (dimensionless)")
     << '\n';
  os << "piezo_convention = additive phase on the reference arm; signal depends on delta_phi - piezo\n";
  os << "beam_splitter_convention = lossless 50/50, transmitted 1/sqrt(2), reflected i/sqrt(2); port + bright at "
        "delta_phi = piezo\n";
  os << "sampling = " << to_string(m.sampling) << '\n';
  os << "seed = " << m.seed << '\n';
  os << "n0 = " << m.n0 << '\n';
  os << "counts = " << (m.sampling == Sampling::poisson ? "independent Poisson draws with mean n0*P" : "n0*P rounded to nearest integer")
     << '\n';
  os << "visibility_p_plus = " << format_number(scan.visibility()) << '\n';
  os << "# row, mean_plus, mean_minus (unrounded n0*P)\n";
  for (std::size_t i = 0; i < scan.rows.size(); ++i)
    os << "mean." << i << " = " << format_number(scan.rows[i].stats.mean_plus) << ", "
       << format_number(scan.rows[i].stats.mean_minus) << '\n';
  return os.str();
}

std::string ray_csv(Ray const &ray)
{
  CsvTable t({"s_m", "x_m", "y_m", "bouguer_rel_drift"});
  for (std::size_t i = 0; i < ray.s.size(); ++i)
    t.add_row() << ray.s[i] << ray.points[i](0) << ray.points[i](1) << ray.bouguer_drift[i];
  return t.str();
}

FringeScan fringe_from_config(ExperimentConfig const &config)
{
  return fringe_scan(config.mzi(), config.sweep(cell_delta_phi(config)), {config.cell.L, config.probe.lambda0});
}

// ---------------------------------------------------------------------------

CommandResult cmd_index(ExperimentConfig const &config)
{
  OutputSet out(config);
  CellDesign const d = design_from_config(config);
  out.write(".index.csv", index_csv(d));
  out.plot(".index.svg", {"Axial refractive index", "z (m)", "n", {{"n(z)", d.profile.position, d.profile.n}}});

  std::ostringstream os;
  os << to_string(config.spacetime.kind) << " cell: n(0) = " << format_number(d.profile.n(0))
     << ", n(L) = " << format_number(d.profile.n(d.profile.size() - 1));
  if (!d.intensity)
    os << " (profile needs n < 1: not realizable by control beams, I/T omitted)";
  out.result.summary = os.str();
  return out.finish();
}

CommandResult cmd_design(ExperimentConfig const &config)
{
  OutputSet out(config);
  CellDesign const d = design_from_config(config);
  out.write(".design.csv", index_csv(d));

  Eigen::Index const last = d.profile.size() - 1;
  std::ostringstream os;
  os << "kind = " << to_string(d.spacetime.kind) << '\n';
  os << "L_m = " << format_number(d.L) << '\n';
  os << "H_per_m = " << format_number(d.spacetime.H) << '\n';
  os << "HL = " << format_number(d.spacetime.H * d.L) << '\n';
  os << "profile_form = " << to_string(d.form) << '\n';
  os << "theta_rad = " << format_number(d.theta) << '\n';
  os << "C = " << format_number(d.C) << '\n';
  os << "n_at_L = " << format_number(d.profile.n(last)) << '\n';
  os << "realizable = " << (d.intensity ? "true" : "false") << '\n';
  if (d.intensity)
    os << "I_at_L = " << format_number((*d.intensity)(last)) << '\n';
  if (d.transmission)
    os << "attenuator_normalization = " << CellDesign::attenuator_normalization << '\n';
  os << "delta_phi_rad = " << format_number(cell_delta_phi(config)) << '\n';
  out.write(".design.txt", os.str());

  if (d.intensity) {
    PlotSpec spec{"Control-beam design", "z (m)", "relative value", {}};
    double const peak = d.intensity->maxCoeff();
    if (peak > 0.0)
      spec.series.push_back({"I / max I", d.profile.position, *d.intensity / peak});
    if (d.transmission)
      spec.series.push_back({"T", d.profile.position, *d.transmission});
    out.plot(".design.svg", spec);
  }
  out.result.summary = os.str();
  return out.finish();
}

CommandResult cmd_phase(ExperimentConfig const &config)
{
  OutputSet out(config);
  out.write(".phase.csv", phase_csv(config));
  out.result.summary = "phase table written";
  return out.finish();
}

CommandResult cmd_fringe(ExperimentConfig const &config)
{
  OutputSet out(config);
  FringeScan const scan = fringe_from_config(config);
  out.write(".fringe.csv", fringe_csv(scan));
  out.write(".fringe.meta", fringe_metadata(config, scan));

  VecX x(scan.rows.size()), pp(scan.rows.size()), pm(scan.rows.size());
  for (std::size_t i = 0; i < scan.rows.size(); ++i) {
    x(static_cast<Eigen::Index>(i)) = scan.rows[i].sweep_value;
    pp(static_cast<Eigen::Index>(i)) = scan.rows[i].stats.p_plus;
    pm(static_cast<Eigen::Index>(i)) = scan.rows[i].stats.p_minus;
  }
  out.plot(".fringe.svg", {"Detector signal", scan.kind == SweepKind::piezo ? "piezo phase (rad)" : "H L",
                           "probability", {{"P+", x, pp}, {"P-", x, pm}}});

  std::ostringstream os;
  os << scan.rows.size() << " rows, visibility " << format_number(scan.visibility()) << ", delta_phi span "
     << format_number((scan.rows.back().stats.delta_phi - scan.rows.front().stats.delta_phi) / pi) << " pi";
  out.result.summary = os.str();
  return out.finish();
}

CommandResult cmd_trace(ExperimentConfig const &config)
{
  OutputSet out(config);
  RadialMedium const medium = RadialMedium::from_spec(config.spacetime);
  double const b = config.trace.b;

  Ray ray;
  CsvTable summary({"b_m", "deflection_rad", "weak_field_rad", "captured", "reason"});
  if (medium.asymptotically_flat()) {
    if (!(b > medium.inner_radius()))
      throw DomainError("b>singular radius", "impact parameter must exceed the singular radius");
    Deflection const d = deflection_angle(medium, b);
    double const R = far_field_radius(medium, b);
    RayOptions opt;
    ray = far_field_ray(medium, b, R, opt);
    if (config.trace.arc_budget) {
      double const y = b / medium.n(R);
      Vec2 const start(-std::sqrt(R * R - y * y), y);
      ray = trace_ray(medium, start, Vec2(1.0, 0.0), *config.trace.arc_budget, opt);
    }
    double const weak = medium.kind == SpacetimeKind::BH ? 4.0 * medium.M / b : 0.0;
    summary.add_row() << b << d.angle << weak << (d.captured ? "true" : "false")
                      << (d.captured ? "singular_radius" : "escaped");
  } else {
    double const scale = medium.length_scale();
    double const budget = config.trace.arc_budget.value_or(scale > 0.0 ? 2.0 * scale : 10.0 * b);
    if (!(b < medium.outer_radius()))
      throw DomainError("ray.start", "impact parameter lies outside the medium");
    ray = trace_ray(medium, Vec2(0.0, b), Vec2(1.0, 0.0), budget);
    summary.add_row() << b << -ray.turning_angle << 0.0
                      << (ray.stop == RayStop::singular_radius ? "true" : "false") << to_string(ray.stop);
  }
  out.write(".ray.csv", ray_csv(ray));
  out.write(".deflection.csv", summary.str());

  std::ostringstream os;
  os << "ray: " << ray.s.size() << " points, stop = " << to_string(ray.stop)
     << ", max Bouguer drift = " << format_number(ray.max_bouguer_drift());

  if (config.trace.capture_search) {
    if (medium.kind != SpacetimeKind::BH)
      throw DomainError("photon-sphere", "capture search needs the BH medium");
    double const r_ps = photon_sphere_radius(medium);
    double const b_ps = medium.n(r_ps) * r_ps;
    double const lo = config.trace.capture_lo.value_or(0.8 * b_ps);
    double const hi = config.trace.capture_hi.value_or(1.2 * b_ps);
    double const threshold = capture_threshold(medium, lo, hi, 1e-6 * b_ps);
    CsvTable cap({"photon_sphere_r_m", "photon_sphere_b_m", "capture_threshold_b_m"});
    cap.add_row() << r_ps << b_ps << threshold;
    out.write(".capture.csv", cap.str());
    os << ", capture threshold b = " << format_number(threshold);
  }

  VecX xs(ray.points.size()), ys(ray.points.size());
  for (std::size_t i = 0; i < ray.points.size(); ++i) {
    xs(static_cast<Eigen::Index>(i)) = ray.points[i](0);
    ys(static_cast<Eigen::Index>(i)) = ray.points[i](1);
  }
  PlotSpec spec{"Ray path", "x (m)", "y (m)", {{"ray", xs, ys}}};
  spec.equal_aspect = true;
  out.plot(".ray.svg", spec);
  out.result.summary = os.str();
  return out.finish();
}

CommandResult cmd_redshift(ExperimentConfig const &config)
{
  OutputSet out(config);
  auto const &s = config.spacetime;
  if (s.kind != SpacetimeKind::RW)
    throw DomainError("kind=RW", "redshift needs an RW spacetime");
  double const te = config.redshift.t_emit, to = config.redshift.t_obs;
  double const z1 = redshift_factor(s, te, to);
  CsvTable t({"t_emit_s", "t_obs_s", "a_emit", "a_obs", "one_plus_z"});
  t.add_row() << te << to << rw_index(s, te) << rw_index(s, to) << z1;
  out.write(".redshift.csv", t.str());
  out.result.summary = "1 + z = " + format_number(z1);
  return out.finish();
}

} // namespace optiverse
