#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "apmeas/constructions.hpp"
#include "apmeas/convolution.hpp"
#include "apmeas/diffraction.hpp"
#include "apmeas/error.hpp"
#include "apmeas/io.hpp"
#include "apmeas/norms.hpp"
#include "apmeas/periods.hpp"
#include "apmeas/selftest.hpp"
#include "json_emit.hpp"
#include "reports.hpp"

namespace apmeas::cli {

using nlohmann::json;

namespace {

// Bad flag values; exit code 2.
struct Usage : std::runtime_error {
  Usage(const std::string& flag, const std::string& what) : std::runtime_error(flag + ": " + what) {}
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& flag, const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Usage(flag, "'" + s + "' is not a number");
  }
  if (used != s.size()) throw Usage(flag, "'" + s + "' is not a number");
  return v;
}

std::vector<double> numbers(const std::string& flag, const std::string& s) {
  std::vector<double> out;
  for (const auto& part : split(s, ',')) out.push_back(to_double(flag, part));
  if (out.empty()) throw Usage(flag, "expected a comma-separated list of numbers");
  return out;
}

Window window_arg(const std::string& flag, const std::string& s) {
  const auto v = numbers(flag, s);
  if (v.size() != 2 || !(v[0] < v[1])) throw Usage(flag, "expected lo,hi with lo < hi");
  return Window(v[0], v[1]);
}

// hat:a,b,c  tent:a,b,c  trapezoid:a,b,c,d
TestFunction function_arg(const std::string& flag, const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw Usage(flag, "expected kind:params, e.g. hat:0,1,2");
  const auto kind = s.substr(0, colon);
  const auto v = numbers(flag, s.substr(colon + 1));
  try {
    if ((kind == "hat" || kind == "tent") && v.size() == 3) return TestFunction::hat(v[0], v[1], v[2]);
    if (kind == "trapezoid" && v.size() == 4) return TestFunction::trapezoid(v[0], v[1], v[2], v[3]);
  } catch (const Error& e) {
    throw Usage(flag, e.what());
  }
  throw Usage(flag, "unknown function '" + s + "' (hat:a,b,c, tent:a,b,c, trapezoid:a,b,c,d)");
}

// gallery:name[:key=value,...] or a JSON file path.
GalleryParams params_arg(const std::string& flag, const std::string& s) {
  GalleryParams p;
  if (s.empty()) return p;
  for (const auto& kv : split(s, ',')) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Usage(flag, "expected key=value, got '" + kv + "'");
    p[kv.substr(0, eq)] = to_double(flag, kv.substr(eq + 1));
  }
  return p;
}

Measure measure_arg(const std::string& flag, const std::string& ref, GalleryParams extra = {}) {
  if (ref.rfind("gallery:", 0) == 0) {
    auto rest = ref.substr(8);
    const auto colon = rest.find(':');
    auto params = params_arg(flag, colon == std::string::npos ? "" : rest.substr(colon + 1));
    for (auto& [k, v] : extra) params[k] = v;
    return gallery(rest.substr(0, colon), params);
  }
  return read_measure(ref);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    write_text(path, text);
  }
}

std::string num(double x) { return format_double(x); }

struct Context {
  std::vector<std::string> argv;
  json config(const CLI::App& sub) const {
    json opts = json::object();
    for (const auto* o : sub.get_options()) {
      if (o->get_name() == "--help" || o->count() == 0) continue;
      opts[o->get_name(false, true)] = o->results();
    }
    return {{"subcommand", sub.get_name()}, {"argv", argv}, {"options", std::move(opts)}};
  }
};

std::string dump(json j) { return detail::dump17(j) + "\n"; }

}  // namespace

int run(const std::vector<std::string>& args) {
  Context ctx{args};
  CLI::App app{"Norm almost periodicity of translation-bounded measures on the real line", "apmeas"};
  app.require_subcommand(0, 1);
  std::string replay;
  app.add_option("--replay", replay, "Re-run the command echoed under \"config\" in a JSON output");

  int status = 0;
  std::function<void()> action;

  // norm ---------------------------------------------------------------------
  auto* norm = app.add_subcommand("norm", "Translation-bounded norm of a measure");
  struct {
    std::string measure, window = "0,1", method = "sliding", out;
    int depth = 6;
  } no;
  norm->add_option("--measure", no.measure, "Measure JSON file or gallery:name[:k=v,...]")->required();
  norm->add_option("--window", no.window, "Norming window lo,hi");
  norm->add_option("--method", no.method, "sliding|family|operator|compact|ball")
      ->check(CLI::IsMember({"sliding", "family", "operator", "compact", "ball"}));
  norm->add_option("--depth", no.depth, "Dyadic refinement depth of the test family")->check(CLI::Range(1, 16));
  norm->add_option("--out", no.out, "Output JSON (default stdout)");
  norm->callback([&] {
    action = [&] {
      const auto mu = measure_arg("--measure", no.measure);
      const auto U = window_arg("--window", no.window);
      NormReport r;
      if (no.method == "sliding") {
        r = norm_U(mu, U);
      } else if (no.method == "family") {
        r = norm_via_family(mu, U, canonical_family(U, no.depth));
      } else if (no.method == "operator") {
        r = operator_norm(mu, U, canonical_family(U.reflected(), no.depth));
      } else if (no.method == "ball") {
        r = norm_via_dyadic_ball(mu, U, no.depth);
      } else {
        // Trapezoids equal to 1 on the closed window, ramps of width 2^-k.
        std::vector<TestFunction> upper;
        for (int k = 1; k <= no.depth; ++k) {
          const double d = std::ldexp(1.0, -k);
          upper.push_back(TestFunction::trapezoid(U.lo() - d, U.lo(), U.hi(), U.hi() + d));
        }
        r = norm_K_compact(mu, ClosedInterval{U.lo(), U.hi()}, upper);
      }
      auto j = to_json(r);
      j["config"] = ctx.config(*norm);
      emit(no.out, dump(j));
    };
  });

  // scan / classify ----------------------------------------------------------
  struct PeriodArgs {
    std::string measure, window = "0,1", eps = "0.1", scan, out, csv;
    double step = 0.01;
    int family_depth = 5;
    bool no_equi = false, no_components = false;
    std::optional<double> snap_star;
  };
  PeriodArgs so;
  PeriodArgs co;
  auto add_period_options = [](CLI::App* sub, PeriodArgs& a) {
    sub->add_option("--measure", a.measure, "Measure JSON file or gallery:name[:k=v,...]")->required();
    sub->add_option("--window", a.window, "Norming window lo,hi");
    sub->add_option("--eps", a.eps, "Comma-separated epsilons");
    sub->add_option("--scan", a.scan, "Scan window lo,hi (use --scan=-50,50 for negative lo)")->required();
    sub->add_option("--step", a.step, "Scan grid step")->check(CLI::PositiveNumber);
    sub->add_option("--family-depth", a.family_depth, "Canonical family depth for the equi-Bohr check")
        ->check(CLI::Range(1, 12));
    sub->add_flag("--no-equi-bohr", a.no_equi, "Skip the equi-Bohr cross-check");
    sub->add_flag("--no-components", a.no_components, "Skip the per-component reports");
    sub->add_option("--snap-star", a.snap_star,
                    "Also try Fibonacci lattice translates within half a step whose internal coordinate is at most "
                    "this")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", a.out, "Classification report JSON");
  };
  auto period_options = [](const PeriodArgs& a, const Window& scan) {
    PeriodOptions p;
    if (a.snap_star) {
      const double r = 0.5 * a.step;
      p.snap_candidates = lattice_translates(fibonacci_scheme(), scan.lo() - r, scan.hi() + r, *a.snap_star);
    }
    return p;
  };
  auto classify_with = [&period_options](const Measure& mu, const PeriodArgs& a, const Window& U, const std::vector<double>& eps,
                          const Window& scan) {
    ClassifyOptions opt;
    opt.equi_bohr = !a.no_equi;
    opt.components = !a.no_components;
    opt.family_depth = a.family_depth;
    opt.periods = period_options(a, scan);
    return classify(mu, U, eps, scan, a.step, opt);
  };

  auto* scan = app.add_subcommand("scan", "Distances ||mu - T_t mu||_U over a scan grid");
  add_period_options(scan, so);
  scan->add_option("--csv", so.csv, "Distance CSV (default stdout)");
  scan->callback([&] {
    action = [&] {
      const auto mu = measure_arg("--measure", so.measure);
      const auto U = window_arg("--window", so.window);
      const auto eps = numbers("--eps", so.eps);
      const auto S = window_arg("--scan", so.scan);
      const auto d = norm_distances(mu, U, S, so.step, period_options(so, S));
      std::string csv = so.snap_star ? "t,witness,norm" : "t,norm";
      for (const auto& e : split(so.eps, ',')) csv += ",is_period_" + e;
      csv += "\n";
      for (std::size_t i = 0; i < d.ts.size(); ++i) {
        csv += num(d.ts[i]) + "," + (so.snap_star ? num(d.witness[i]) + "," : "") + num(d.distance[i]);
        for (double e : eps) csv += d.distance[i] <= e ? ",1" : ",0";
        csv += "\n";
      }
      emit(so.csv, csv);
      if (!so.out.empty()) {
        auto j = to_json(classify_with(mu, so, U, eps, S));
        j["config"] = ctx.config(*scan);
        emit(so.out, dump(j));
      }
    };
  });

  auto* cls = app.add_subcommand("classify", "Evidence-graded almost periodicity report");
  add_period_options(cls, co);
  cls->callback([&] {
    action = [&] {
      const auto mu = measure_arg("--measure", co.measure);
      auto j = to_json(classify_with(mu, co, window_arg("--window", co.window), numbers("--eps", co.eps),
                                     window_arg("--scan", co.scan)));
      j["config"] = ctx.config(*cls);
      emit(co.out, dump(j));
    };
  });

  // convolve -----------------------------------------------------------------
  auto* conv = app.add_subcommand("convolve", "Convolution of a measure with a finite measure");
  struct {
    std::string a, b, out;
  } cv;
  conv->add_option("--a", cv.a, "Measure (may be truncated)")->required();
  conv->add_option("--b", cv.b, "Finite measure")->required();
  conv->add_option("--out", cv.out, "Output measure JSON (default stdout)");
  conv->callback([&] {
    action = [&] {
      const auto r = convolve_mm(measure_arg("--a", cv.a), measure_arg("--b", cv.b));
      auto j = json::parse(measure_to_json(r.measure));
      j["config"] = ctx.config(*conv);
      emit(cv.out, dump(j));
    };
  });

  // converge -----------------------------------------------------------------
  auto* cvg = app.add_subcommand("converge", "Product convergence defects ||(mu_n - mu) * g||_inf");
  struct {
    std::string seq, limit, g = "hat:0,1,2", n = "1..64", csv, out;
  } cg;
  cvg->add_option("--seq", cg.seq, "gallery:name; n is passed as the parameter n")->required();
  cvg->add_option("--limit", cg.limit, "Limit measure")->required();
  cvg->add_option("--g", cg.g, "Test function");
  cvg->add_option("--n", cg.n, "Index range a..b");
  cvg->add_option("--csv", cg.csv, "Defect CSV (default stdout)");
  cvg->add_option("--out", cg.out, "Summary JSON");
  cvg->callback([&] {
    action = [&] {
      const auto dots = cg.n.find("..");
      if (dots == std::string::npos) throw Usage("--n", "expected a range a..b");
      const auto a = to_double("--n", cg.n.substr(0, dots));
      const auto b = to_double("--n", cg.n.substr(dots + 2));
      if (a != std::floor(a) || b != std::floor(b) || a < 1 || b < a) throw Usage("--n", "expected integers 1 <= a <= b");
      if (cg.seq.rfind("gallery:", 0) != 0) throw Usage("--seq", "expected gallery:name");
      const auto g = function_arg("--g", cg.g);
      const auto limit = measure_arg("--limit", cg.limit);
      std::string csv = "n,defect\n";
      double worst = 0.0;
      for (auto n = static_cast<long long>(a); n <= static_cast<long long>(b); ++n) {
        const auto mu_n = measure_arg("--seq", cg.seq, {{"n", static_cast<double>(n)}});
        const double d = product_convergence_defect(mu_n, limit, g);
        worst = std::max(worst, static_cast<double>(n) * d);
        csv += std::to_string(n) + "," + num(d) + "\n";
      }
      emit(cg.csv, csv);
      if (!cg.out.empty()) {
        emit(cg.out, dump({{"max_n_times_defect", worst}, {"lipschitz", g.lipschitz()}, {"config", ctx.config(*cvg)}}));
      }
    };
  });

  // eberlein -----------------------------------------------------------------
  auto* eb = app.add_subcommand("eberlein", "Eberlein convolution approximant on A_n = (-n, n)");
  struct {
    std::string a, b, out;
    double radius = 10.0;
  } ebo;
  eb->add_option("--a", ebo.a, "First measure")->required();
  eb->add_option("--b", ebo.b, "Second measure")->required();
  eb->add_option("--radius", ebo.radius, "Averaging set (-r, r)")->check(CLI::PositiveNumber);
  eb->add_option("--out", ebo.out, "Output measure JSON (default stdout)");
  eb->callback([&] {
    action = [&] {
      const VanHoveSequence vh({ebo.radius});
      const auto e = eberlein(measure_arg("--a", ebo.a), measure_arg("--b", ebo.b), vh, 1);
      auto j = json::parse(measure_to_json(e));
      j["meta"] = {{"boundary_ratio", boundary_ratio(vh, ClosedInterval{-1.0, 1.0}, 1)},
                   {"caveat", "finite van Hove approximant; existence of the Eberlein limit is not certified, "
                              "compare two radii for stability"}};
      j["config"] = ctx.config(*eb);
      emit(ebo.out, dump(j));
    };
  });

  // diffract -----------------------------------------------------------------
  auto* dif = app.add_subcommand("diffract", "Diffraction spectrum of the autocorrelation");
  struct {
    std::string measure, taper = "triangular", csv, out;
    double window = 100.0, fmin = 0.0, fmax = 5.0, fstep = 1e-3, threshold = 1e-3;
  } df;
  dif->add_option("--measure", df.measure, "Measure")->required();
  dif->add_option("--window", df.window, "Length of the centred averaging window")->check(CLI::PositiveNumber);
  dif->add_option("--fmin", df.fmin, "Lowest frequency");
  dif->add_option("--fmax", df.fmax, "Highest frequency");
  dif->add_option("--fstep", df.fstep, "Frequency step")->check(CLI::PositiveNumber);
  dif->add_option("--taper", df.taper, "triangular|none")->check(CLI::IsMember({"triangular", "none"}));
  dif->add_option("--threshold", df.threshold, "Peak threshold relative to the largest sample");
  dif->add_option("--csv", df.csv, "Spectrum CSV (default stdout)");
  dif->add_option("--out", df.out, "Peak report JSON");
  dif->callback([&] {
    action = [&] {
      const auto omega = measure_arg("--measure", df.measure);
      const VanHoveSequence vh({df.window / 2});
      const auto gamma = autocorrelation(omega, vh, 1);
      auto s = fourier(gamma, df.fmin, df.fmax, df.fstep, df.taper == "none" ? Taper::None : Taper::Triangular);
      s.window_length = df.window;
      const double top = s.intensity.empty() ? 0.0 : *std::max_element(s.intensity.begin(), s.intensity.end());
      const auto split = peak_split(s, df.threshold * top);
      std::string csv = "freq,intensity\n";
      for (std::size_t i = 0; i < s.intensity.size(); ++i) csv += num(s.freq(i)) + "," + num(s.intensity[i]) + "\n";
      emit(df.csv, csv);
      if (!df.out.empty()) {
        auto j = to_json(split, s);
        j["config"] = ctx.config(*dif);
        emit(df.out, dump(j));
      }
    };
  });

  // gallery ------------------------------------------------------------------
  auto* gal = app.add_subcommand("gallery", "Write a named example measure");
  struct {
    std::string name, params, out;
    std::optional<double> n, depth, M;
    bool list = false;
  } ga;
  gal->add_option("--name", ga.name, "Gallery name");
  gal->add_option("--n", ga.n, "Parameter n");
  gal->add_option("--depth", ga.depth, "Parameter depth");
  gal->add_option("--M", ga.M, "Parameter M");
  gal->add_option("--param", ga.params, "Further parameters key=value,...");
  gal->add_flag("--list", ga.list, "List gallery names");
  gal->add_option("--out", ga.out, "Output measure JSON (default stdout)");
  gal->callback([&] {
    action = [&] {
      if (ga.list) {
        for (const auto& n : gallery_names()) std::cout << n << "\n";
        return;
      }
      if (ga.name.empty()) throw Usage("--name", "required unless --list is given");
      auto p = params_arg("--param", ga.params);
      if (ga.n) p["n"] = *ga.n;
      if (ga.depth) p["depth"] = *ga.depth;
      if (ga.M) p["M"] = *ga.M;
      auto j = json::parse(measure_to_json(gallery(ga.name, p)));
      j["config"] = ctx.config(*gal);
      emit(ga.out, dump(j));
    };
  });

  // cps ----------------------------------------------------------------------
  auto* cps = app.add_subcommand("cps", "Weighted model-set comb from a cut and project scheme");
  cps->set_help_flag("--help", "Print this help message and exit");
  struct {
    std::string scheme = "fibonacci", h = "tent:-1,0,0.6180339887498949", window = "-100,100", out;
    std::optional<long long> range;
  } cp;
  cps->add_option("--scheme", cp.scheme, "Scheme name")->check(CLI::IsMember({"fibonacci"}));
  cps->add_option("--h", cp.h, "Weight function on the internal space");
  cps->add_option("--window", cp.window, "Physical window lo,hi (use --window=-100,100)");
  cps->add_option("--range", cp.range, "Lattice coefficient range");
  cps->add_option("--out", cp.out, "Output measure JSON (default stdout)");
  cps->callback([&] {
    action = [&] {
      const auto s = fibonacci_scheme();
      auto j = json::parse(measure_to_json(
          cps_comb(s, function_arg("--h", cp.h), window_arg("--window", cp.window), cp.range)));
      j["config"] = ctx.config(*cps);
      emit(cp.out, dump(j));
    };
  });

  // selftest -----------------------------------------------------------------
  auto* st = app.add_subcommand("selftest", "Run the acceptance suite");
  struct {
    std::uint64_t seed = 1;
    std::size_t size = 200;
    std::vector<int> only;
  } sto;
  st->add_option("--seed", sto.seed, "Corpus seed");
  st->add_option("--size", sto.size, "Corpus size")->check(CLI::PositiveNumber);
  st->add_option("--only", sto.only, "Criterion ids to run")->delimiter(',');
  st->callback([&] {
    action = [&] {
      SelftestOptions opt;
      opt.seed = sto.seed;
      opt.corpus_size = sto.size;
      opt.only = sto.only;
      int failed = 0;
      run_selftest(opt, [&](const CriterionResult& r) {
        std::cout << format_result(r) << "\n";
        std::cout.flush();
        if (!r.pass) ++failed;
      });
      status = failed == 0 ? 0 : 1;
    };
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (!replay.empty()) {
      const auto j = json::parse(read_text(replay));
      if (!j.contains("config") || !j["config"].contains("argv")) throw Usage("--replay", "file has no config.argv");
      return run(j["config"]["argv"].get<std::vector<std::string>>());
    }
    if (!action) {
      std::cerr << app.help();
      return 2;
    }
    action();
    return status;
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_edge_refusal(e.code()) ? 3 : 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace apmeas::cli
