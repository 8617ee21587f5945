#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "csv.hpp"
#include "swanson/cli.hpp"
#include "swanson/error.hpp"
#include "swanson/fock_oracle.hpp"
#include "swanson/iho.hpp"
#include "swanson/kernels.hpp"
#include "swanson/mathieu.hpp"
#include "swanson/response.hpp"
#include "swanson/su11.hpp"

namespace swanson::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

// Runs f(0..n-1) on a pool; results land in caller-owned slots, so the output
// order never depends on scheduling. The lowest-index failure is rethrown.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& f) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string prefix(const RunConfig& c) {
  std::string p = c.output;
  if (p.size() > 4 && p.ends_with(".csv")) p.resize(p.size() - 4);
  return p;
}

std::string kv(const char* k, double v) { return std::string(k) + "=" + format_number(v); }

std::string model_line(const RunConfig& c, const EffectiveOscillator& eff) {
  std::ostringstream os;
  os << c.command << ": " << kv("omega", c.model.omega) << ' ' << kv("alpha", c.model.alpha) << ' '
     << kv("gamma", c.model.gamma) << ' ' << kv("b0", c.model.b0) << ' ' << kv("m", eff.mass) << ' '
     << kv("Omega", eff.abs_omega) << ' ' << kv("btilde", eff.length());
  return os.str();
}

std::string drive_line(const RunConfig& c, bool with_eps) {
  std::ostringstream os;
  os << kv("W", c.drive.W);
  if (with_eps) os << ' ' << kv("epsilon", c.drive.epsilon);
  else os << ' ' << kv("t0", c.drive.t0);
  os << " mode=" << to_string(c.mode);
  return os.str();
}

EffectiveOscillator region_one_model(const RunConfig& c) {
  const EffectiveOscillator eff = classify_region(c.model);
  if (eff.region != Region::I)
    throw Error(ErrorKind::WrongRegion, std::string("command needs region I, model is region ") +
                                            to_string(eff.region));
  return eff;
}

double iho_omega(const RunConfig& c) {
  if (c.abs_omega) {
    if (!(*c.abs_omega > 0.0)) throw Error(ErrorKind::InvalidArgument, "abs_omega must be positive");
    return *c.abs_omega;
  }
  const EffectiveOscillator eff = classify_region(c.model);
  if (eff.region != Region::II)
    throw Error(ErrorKind::WrongRegion, std::string("command needs region II, model is region ") +
                                            to_string(eff.region));
  return eff.abs_omega;
}

struct Series {
  std::string name;
  std::vector<ThermalMoments> m;
};

void append(std::vector<double>& row, Complex z) {
  row.push_back(z.real());
  row.push_back(z.imag());
}

// Two files (x2, p2) with one complex column pair per series.
void write_moment_pair(const RunConfig& c, const std::vector<std::string>& comments,
                       const std::vector<std::string>& keys,
                       const std::vector<std::vector<double>>& key_rows,
                       const std::vector<Series>& series, std::ostream& out) {
  const std::string base = prefix(c);
  CsvFile fx(base + "_x2.csv"), fp(base + "_p2.csv");
  std::vector<std::string> hdr = keys;
  for (const auto& s : series) {
    hdr.push_back(s.name + "_re");
    hdr.push_back(s.name + "_im");
  }
  for (auto* f : {&fx, &fp})
    for (const auto& line : comments) f->comment(line);
  fx.comment("<x^2> in units of btilde^2");
  fp.comment("<p^2> in units of hbar^2/btilde^2");
  fx.header(hdr);
  fp.header(hdr);
  for (std::size_t r = 0; r < key_rows.size(); ++r) {
    std::vector<double> rx = key_rows[r], rp = key_rows[r];
    for (const auto& s : series) {
      append(rx, s.m[r].x2);
      append(rp, s.m[r].p2);
    }
    fx.row(rx);
    fp.row(rp);
  }
  fx.commit();
  fp.commit();
  out << fx.path() << '\n' << fp.path() << '\n';
}

void warn_strong(const RunConfig& c, const EffectiveOscillator& eff, double V, std::ostream& err) {
  DriveParams d = c.drive;
  d.V = V;
  if (strong_drive(d, eff))
    err << "warning: V=" << format_number(V) << " >= Omega^2/2, linear response is outside its range\n";
}

// example1 / fig1
int run_example1(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const EffectiveOscillator eff = region_one_model(c);
  const std::vector<double> ts = c.t.points();
  warn_strong(c, eff, c.drive.V, err);
  std::vector<Series> series;
  if (c.mode != Mode::Linear) series.push_back({"exact", {}});
  if (c.mode != Mode::Exact) series.push_back({"linear", {}});
  if (c.mode == Mode::Both) series.push_back({"closed_form", {}});
  if (c.mode == Mode::Oracle) series.push_back({"oracle", {}});
  for (auto& s : series) s.m.resize(ts.size());

  parallel_for(series.size(), worker_count(c), [&](std::size_t k) {
    Series& s = series[k];
    if (s.name == "exact") {
      s.m = moments_exact_ex1(c.drive, eff, c.beta, ts);
    } else if (s.name == "linear") {
      for (std::size_t i = 0; i < ts.size(); ++i) s.m[i] = moments_linear_ex1(c.drive, eff, c.beta, ts[i]);
    } else if (s.name == "closed_form") {
      for (std::size_t i = 0; i < ts.size(); ++i)
        s.m[i] = moments_disentangled_ex1(c.drive, eff, c.beta, ts[i]);
    } else {
      OracleOptions o{c.dim, c.dt, adiabatic_start(c.drive, eff, 1e-10)};
      s.m = oracle_moments_ex1(c.drive, eff, c.beta, ts, o);
    }
  });
  std::vector<std::vector<double>> keys;
  for (double t : ts) keys.push_back({t});
  write_moment_pair(c,
                    {model_line(c, eff), kv("V", c.drive.V) + ' ' + kv("beta", c.beta) + ' ' +
                                             drive_line(c, true)},
                    {"t"}, keys, series, out);
  return 0;
}

// example2
int run_example2(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const EffectiveOscillator eff = region_one_model(c);
  const std::vector<double> ts = c.t.points();
  if (ts.front() < c.drive.t0) throw Error(ErrorKind::InvalidArgument, "t_min must be >= t0");
  warn_strong(c, eff, c.drive.V, err);
  std::vector<Series> series;
  if (c.mode != Mode::Linear) series.push_back({"exact", {}});
  if (c.mode != Mode::Exact) series.push_back({"linear", {}});
  if (c.mode == Mode::Oracle) series.push_back({"oracle", {}});
  for (auto& s : series) s.m.resize(ts.size());
  parallel_for(series.size(), worker_count(c), [&](std::size_t k) {
    Series& s = series[k];
    if (s.name == "exact") {
      s.m = moments_exact_ex2(c.drive, eff, c.beta, ts);
    } else if (s.name == "linear") {
      for (std::size_t i = 0; i < ts.size(); ++i) s.m[i] = moments_linear_ex2(c.drive, eff, c.beta, ts[i]);
    } else {
      OracleOptions o{c.dim, c.dt, c.drive.t0};
      s.m = oracle_moments_ex2(c.drive, eff, c.beta, ts, o);
    }
  });
  std::vector<std::vector<double>> keys;
  for (double t : ts) keys.push_back({t});
  write_moment_pair(c,
                    {model_line(c, eff), kv("V", c.drive.V) + ' ' + kv("beta", c.beta) + ' ' +
                                             drive_line(c, false)},
                    {"t"}, keys, series, out);
  return 0;
}

// fig2 / fig3: sweep over V and T; one task per (V, T) pair.
int run_sweep(const RunConfig& c, bool example1, std::ostream& out, std::ostream& err) {
  const EffectiveOscillator eff = region_one_model(c);
  const std::vector<double> ts = c.t.points();
  const std::vector<double> Ts = c.T.points();
  const std::vector<double> Vs = c.V_values.empty() ? std::vector<double>{c.drive.V} : c.V_values;
  for (double T : Ts)
    if (!(T > 0.0)) throw Error(ErrorKind::InvalidArgument, "temperatures must be positive");
  for (double V : Vs) warn_strong(c, eff, V, err);
  const bool want_exact = c.mode != Mode::Linear;
  const bool want_linear = c.mode != Mode::Exact;
  if (c.mode == Mode::Oracle) throw UsageError("oracle mode is available for example1/example2 only");

  const std::size_t tasks = Vs.size() * Ts.size();
  std::vector<std::vector<ThermalMoments>> exact(tasks), linear(tasks);
  parallel_for(tasks, worker_count(c), [&](std::size_t k) {
    DriveParams d = c.drive;
    d.V = Vs[k / Ts.size()];
    const double beta = 1.0 / Ts[k % Ts.size()];
    if (want_exact)
      exact[k] = example1 ? moments_exact_ex1(d, eff, beta, ts) : moments_exact_ex2(d, eff, beta, ts);
    if (want_linear) {
      linear[k].resize(ts.size());
      for (std::size_t i = 0; i < ts.size(); ++i)
        linear[k][i] = example1 ? moments_linear_ex1(d, eff, beta, ts[i])
                                : moments_linear_ex2(d, eff, beta, ts[i]);
    }
  });

  std::vector<Series> series;
  if (want_exact) series.push_back({"exact", {}});
  if (want_linear) series.push_back({"linear", {}});
  std::vector<std::vector<double>> keys;
  for (std::size_t k = 0; k < tasks; ++k)
    for (std::size_t i = 0; i < ts.size(); ++i) {
      keys.push_back({Vs[k / Ts.size()], Ts[k % Ts.size()], ts[i]});
      std::size_t s = 0;
      if (want_exact) series[s++].m.push_back(exact[k][i]);
      if (want_linear) series[s++].m.push_back(linear[k][i]);
    }
  write_moment_pair(c, {model_line(c, eff), drive_line(c, example1)}, {"V", "T", "t"}, keys,
                    series, out);
  return 0;
}

// fig4 / thermo
int run_thermo(const RunConfig& c, std::ostream& out) {
  const double w = iho_omega(c);
  const std::vector<double> Ts = c.T.points();
  std::vector<IhoThermo> rows(Ts.size());
  parallel_for(Ts.size(), worker_count(c), [&](std::size_t k) { rows[k] = thermo_reduced(w, Ts[k]); });
  CsvFile f(prefix(c) + ".csv");
  f.comment(c.command + ": " + kv("abs_omega", w) + " (hbar = k_B = 1)");
  f.comment("U_r, F_r in energy units; C_r, S_r in units of k_B");
  f.header({"T", "U_r", "C_r", "n_r", "Z_r_re", "Z_r_im", "F_r_re", "F_r_im", "S_r_re", "S_r_im"});
  for (const IhoThermo& r : rows) {
    std::vector<double> v{r.T, r.U_r, r.C_r, r.n_r};
    append(v, r.Z_r);
    append(v, r.F_r);
    append(v, r.S_r);
    f.row(v);
  }
  f.commit();
  out << f.path() << '\n';
  return 0;
}

// fig5: n_bar over (t, T)
int run_fig5(const RunConfig& c, std::ostream& out) {
  const double w = iho_omega(c);
  const std::vector<double> ts = c.t.points();
  const std::vector<double> Ts = c.T.points();
  std::vector<DrivenOccupation> rows(ts.size() * Ts.size());
  parallel_for(Ts.size(), worker_count(c), [&](std::size_t k) {
    for (std::size_t i = 0; i < ts.size(); ++i)
      rows[k * ts.size() + i] = occupation_driven(c.drive, w, ts[i], 1.0 / Ts[k]);
  });
  CsvFile f(prefix(c) + ".csv");
  f.comment(c.command + ": " + kv("abs_omega", w) + ' ' + kv("W", c.drive.W) + ' ' +
            kv("V", c.drive.V));
  f.comment("U_bar = hbar|Omega| n_bar");
  f.header({"T", "t", "n_bar_re", "n_bar_im", "U_bar_re", "U_bar_im"});
  for (std::size_t k = 0; k < Ts.size(); ++k)
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const DrivenOccupation& o = rows[k * ts.size() + i];
      std::vector<double> v{Ts[k], ts[i]};
      append(v, o.n_bar);
      append(v, o.U_bar);
      f.row(v);
    }
  f.commit();
  out << f.path() << '\n';
  return 0;
}

int run_example3(const RunConfig& c, std::ostream& out) {
  const double w = iho_omega(c);
  const std::vector<double> ts = c.t.points();
  std::vector<SecondOrderKernel> ks(ts.size());
  std::vector<DrivenOccupation> occ(ts.size());
  parallel_for(ts.size(), worker_count(c), [&](std::size_t i) {
    ks[i] = second_order_kernel(c.drive, w, ts[i], c.beta);
    occ[i] = occupation_driven(c.drive, w, ts[i], c.beta);
  });
  CsvFile f(prefix(c) + ".csv");
  f.comment(c.command + ": " + kv("abs_omega", w) + ' ' + kv("W", c.drive.W) + ' ' +
            kv("V", c.drive.V) + ' ' + kv("beta", c.beta));
  f.header({"t", "K1", "K2", "F_re", "F_im", "n_bar_re", "n_bar_im", "U_bar_re", "U_bar_im"});
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::vector<double> v{ts[i], ks[i].K1, ks[i].K2};
    append(v, ks[i].F);
    append(v, occ[i].n_bar);
    append(v, occ[i].U_bar);
    f.row(v);
  }
  f.commit();
  out << f.path() << '\n';
  return 0;
}

int run_region(const RunConfig& c, std::ostream& out) {
  const EffectiveOscillator eff = classify_region(c.model);
  const XpCoefficients xp = xp_coefficients(c.model);
  const GaugeExponent g = gauge_exponent(c.model, 0.0);
  out << "region " << to_string(eff.region) << '\n'
      << "mass " << format_number(eff.mass) << '\n'
      << "omega_sq " << format_number(eff.omega_sq) << '\n'
      << "abs_omega " << format_number(eff.abs_omega) << '\n';
  if (eff.btilde) out << "btilde " << format_number(*eff.btilde) << '\n';
  out << "c_xx " << format_number(xp.c_xx) << '\n'
      << "c_pp " << format_number(xp.c_pp) << '\n'
      << "c_xp " << format_number(xp.c_xp) << '\n'
      << "gauge_coefficient " << format_number(g.coefficient.real()) << '\n';
  return 0;
}

// Short oracle suite; each line is PASS or FAIL with the measured figure.
int run_validate(const RunConfig& c, std::ostream& out) {
  bool ok = true;
  auto report = [&](const std::string& name, double value, double tol) {
    const bool pass = std::isfinite(value) && value <= tol;
    ok = ok && pass;
    out << (pass ? "PASS " : "FAIL ") << name << " value=" << format_number(value)
        << " tol=" << format_number(tol) << '\n';
  };
  const SwansonParams p{1.0, 0.2, 0.3, 1.0};

  report("gauge_static", gauge_check(p, std::nullopt, 0.0), 1e-6);

  {
    const TracePair tr = trace_check(p, 1.0, build_operators(80, p).x2.dense());
    report("trace_x2", std::abs(tr.lhs - tr.rhs) / std::abs(tr.rhs), 1e-10);
  }

  {
    const EffectiveOscillator eff = classify_region(p);
    const FockBasis b{40, eff.length()};
    const DenseMatrix x = position(b).dense();
    const DenseMatrix h0 = oscillator(b, eff.mass, eff.omega_sq).dense();
    double worst = 0.0;
    for (double beta : {0.5, 1.0, 2.0}) {
      const auto j = spectral_intensity(x, x, h0, beta, Ordering::AB);
      const auto jp = spectral_intensity(x, x, h0, beta, Ordering::BA);
      for (std::size_t k = 0; k < j.size() && k < jp.size(); ++k) {
        const Complex lhs = jp[k].weight, rhs = std::exp(beta * j[k].omega) * j[k].weight;
        const double s = std::max(std::abs(lhs), std::abs(rhs));
        if (s > 0.0) worst = std::max(worst, std::abs(lhs - rhs) / s);
      }
      if (j.size() != jp.size()) worst = INFINITY;
    }
    report("kms_lines", worst, 1e-12);
  }

  {
    const double w = 2.0 * kPi, beta = 0.5;
    const Complex z = resonant_partition_sum(w, beta, 4'000'000, 1e-5);
    report("partition_resonant_sum", std::abs(z - partition_reduced(w, beta).Z_r), 1e-4);
  }

  {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Su11Element e{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
      worst = std::max(worst, (recompose(disentangle(e)) - exp_rep(e)).cwiseAbs().maxCoeff());
    }
    report("su11_recompose", worst, 1e-12);
  }

  {
    const MathieuSolution s(1.0, 0.5, 10.0);
    double worst = 0.0;
    for (int k = 0; k <= 1000; ++k) worst = std::max(worst, std::abs(s.residual(0.01 * k)));
    report("mathieu_residual", worst, 1e-8);
  }

  {
    const EffectiveOscillator eff = region_one(1.0, 1.0);
    const DriveParams d{0.26, 1.0, 0.05, 0.0};
    const std::vector<double> ts{0.0, 0.5};
    const auto ex = moments_exact_ex1(d, eff, 1.0, ts);
    const auto orc = oracle_moments_ex1(d, eff, 1.0, ts, {c.dim, c.dt, adiabatic_start(d, eff, 1e-10)});
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      worst = std::max(worst, std::abs(ex[i].x2 - orc[i].x2) / std::abs(orc[i].x2));
      worst = std::max(worst, std::abs(ex[i].p2 - orc[i].p2) / std::abs(orc[i].p2));
    }
    report("exact_vs_fock_oracle", worst, 1e-6);
  }
  return ok ? 0 : 3;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check(c);
  try {
    const std::string& cmd = c.command;
    if (cmd == "version") {
      out << "swanson-dgf " << kVersion << " (simd: " << kernels::to_string(kernels::active_isa())
          << ")\n";
      return 0;
    }
    if (cmd == "fig1" || cmd == "example1") return run_example1(c, out, err);
    if (cmd == "example2") return run_example2(c, out, err);
    if (cmd == "fig2") return run_sweep(c, true, out, err);
    if (cmd == "fig3") return run_sweep(c, false, out, err);
    if (cmd == "fig4" || cmd == "thermo") return run_thermo(c, out);
    if (cmd == "fig5") return run_fig5(c, out);
    if (cmd == "example3") return run_example3(c, out);
    if (cmd == "region") return run_region(c, out);
    if (cmd == "validate") return run_validate(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  throw UsageError("unknown command '" + c.command + "'");
}

}  // namespace swanson::cli
