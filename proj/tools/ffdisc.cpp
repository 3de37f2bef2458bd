// ffdisc: generate digital hybrid sequences over F_q, certify coefficient
// prefixes and measure exact star discrepancy.
//
// Exit codes: 0 success or pass, 1 verification failure or exhausted search,
// 2 usage or validation error, 3 precision or resource error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ffdisc/ffdisc.hpp"

namespace fs = std::filesystem;
using namespace ffdisc;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kPrecision = 3;

struct Config {
  std::uint32_t q = 0;
  std::string poly = "0 1";
  std::string theta;
  std::optional<unsigned> deficiency;
  std::optional<std::size_t> depth;
  std::uint64_t count = 0;
  std::vector<unsigned> exponents;
  unsigned extra = 4;
  unsigned threads = 1;
  std::string out;
  std::string input;
  std::string sequence = "hybrid";
  bool list_pairs = false;
};

// Writes to <out dir>/<name> when an output directory is configured,
// otherwise to stdout.
class Sink {
 public:
  Sink(const Config& cfg, const std::string& name) {
    std::string dir = cfg.out;
    if (dir.empty())
      if (const char* env = std::getenv("FFDISC_OUT")) dir = env;
    if (dir.empty()) return;
    fs::create_directories(dir);
    path_ = fs::path(dir) / name;
    file_ = std::make_unique<std::ofstream>(path_, std::ios::binary);
    if (!*file_) throw std::runtime_error("cannot open " + path_.string() + " for writing");
  }

  std::ostream& stream() { return file_ ? *file_ : std::cout; }

  void close() {
    stream().flush();
    if (!stream()) throw std::runtime_error("write failed" + (file_ ? " for " + path_.string() : std::string()));
    if (file_) std::cerr << "wrote " << path_.string() << '\n';
  }

 private:
  fs::path path_;
  std::unique_ptr<std::ofstream> file_;
};

FieldPtr field_of(const Config& cfg) {
  if (cfg.q == 0) throw DomainError("--q is required");
  return FieldCtx::of_order(cfg.q);
}

Poly modulus_of(const Config& cfg, const FieldPtr& ctx) {
  Poly p = parse_poly(cfg.poly, ctx);
  if (p.degree() < 1) throw DomainError("--P must have degree >= 1");
  if (!is_irreducible(p)) throw DomainError("--P \"" + cfg.poly + "\" is reducible over F_" + std::to_string(cfg.q));
  return p;
}

CoefficientFile search_theta(const FieldPtr& ctx, unsigned deficiency, std::size_t len) {
  SearchStats st;
  const auto t0 = std::chrono::steady_clock::now();
  auto res = search_bad_prefix(ctx, deficiency, len, &st, [&](const SearchStats& s) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "search: nodes=" << s.nodes << " deepest=" << s.deepest << " elapsed=" << secs << "s\n";
  });
  if (!res)
    throw SearchExhausted("no prefix of length " + std::to_string(len) + " with deficiency " +
                          std::to_string(deficiency) + " exists over F_" + std::to_string(ctx->q()) +
                          " (deepest " + std::to_string(st.deepest) + ", " + std::to_string(st.nodes) + " nodes)");
  return {ctx->q(), deficiency, false, std::move(*res)};
}

// --theta-file is a path or search:D,L.
CoefficientFile theta_of(const Config& cfg, const FieldPtr& ctx) {
  if (cfg.theta.empty()) throw DomainError("--theta-file is required");
  if (cfg.theta.rfind("search:", 0) == 0) {
    const std::string arg = cfg.theta.substr(7);
    const auto comma = arg.find(',');
    if (comma == std::string::npos) throw DomainError("--theta-file search:D,L needs both D and L");
    const auto d = detail::parse_uint(arg.substr(0, comma), "--theta-file deficiency");
    const auto l = detail::parse_uint(arg.substr(comma + 1), "--theta-file length");
    return search_theta(ctx, static_cast<unsigned>(d), l);
  }
  std::ifstream in(cfg.theta);
  if (!in) throw DomainError("--theta-file: cannot open " + cfg.theta);
  CoefficientFile f = read_coefficients(in);
  if (f.q != ctx->q())
    throw DomainError("--theta-file is over q=" + std::to_string(f.q) + " but --q is " + std::to_string(ctx->q()));
  return f;
}

int cmd_gen(const Config& cfg) {
  const FieldPtr ctx = field_of(cfg);
  const Poly p = modulus_of(cfg, ctx);
  const auto theta = theta_of(cfg, ctx);
  const auto prec = run_precision(cfg.count, ctx->q(), static_cast<unsigned>(p.degree()), cfg.extra);
  const LaurentPrefix phi = induce(theta.series(ctx), p, prec.series_depth);
  const HybridGenerator gen(phi, p, cfg.count, cfg.extra);
  const auto pts = gen.generate_all(cfg.threads);
  Sink sink(cfg, "points.csv");
  write_points(sink.stream(), pts);
  sink.close();
  return kOk;
}

int cmd_induce(const Config& cfg) {
  const FieldPtr ctx = field_of(cfg);
  const Poly p = modulus_of(cfg, ctx);
  if (!cfg.depth) throw DomainError("--depth is required");
  const auto theta = theta_of(cfg, ctx);
  const LaurentPrefix phi = induce(theta.series(ctx), p, static_cast<unsigned>(*cfg.depth));
  Sink sink(cfg, "phi.txt");
  write_coefficients(sink.stream(), {ctx->q(), std::nullopt, false, phi.fractional_coeffs(*cfg.depth)});
  sink.close();
  return kOk;
}

int cmd_verify_bad(const Config& cfg) {
  const FieldPtr ctx = field_of(cfg);
  const auto theta = theta_of(cfg, ctx);
  const unsigned deficiency = cfg.deficiency ? *cfg.deficiency : theta.deficiency.value_or(0);
  std::vector<std::uint32_t> a = theta.codes;
  if (cfg.depth) {
    if (*cfg.depth > a.size() && !theta.exact)
      throw PrecisionError("--depth " + std::to_string(*cfg.depth) + " exceeds the " + std::to_string(a.size()) +
                           " supplied coefficients");
    a.resize(*cfg.depth, 0);
  }
  const auto cert = verify_bad_t(ctx, a, deficiency, cfg.threads, cfg.list_pairs);
  Sink sink(cfg, "certificate.txt");
  write_certificate(sink.stream(), *ctx, a, cert);
  sink.close();
  if (!cert.pass) {
    std::cerr << "verify-bad: fail at k=" << cert.first_failure->k << " l=" << cert.first_failure->l << '\n';
    return kFail;
  }
  return kOk;
}

int cmd_search_bad(const Config& cfg) {
  const FieldPtr ctx = field_of(cfg);
  if (!cfg.depth) throw DomainError("--depth is required");
  const auto f = search_theta(ctx, cfg.deficiency.value_or(0), *cfg.depth);
  Sink sink(cfg, "theta.txt");
  write_coefficients(sink.stream(), f);
  sink.close();
  return kOk;
}

int cmd_discrepancy(const Config& cfg) {
  const FieldPtr ctx = field_of(cfg);
  PointSet2D pts;
  if (cfg.input.empty() || cfg.input == "-") {
    pts = read_points(std::cin, ctx->q());
  } else {
    std::ifstream in(cfg.input);
    if (!in) throw DomainError("cannot open point file " + cfg.input);
    pts = read_points(in, ctx->q());
  }
  const auto rep = star_disc_2d(pts, cfg.threads);
  Sink sink(cfg, "discrepancy.csv");
  sink.stream() << kDiscrepancyHeader << '\n';
  write_discrepancy_row(sink.stream(), rep);
  sink.close();
  std::cerr << "elapsed " << rep.elapsed_seconds << "s\n";
  return kOk;
}

int cmd_scaling(const Config& cfg) {
  const FieldPtr ctx = field_of(cfg);
  if (cfg.exponents.empty()) throw DomainError("--exponents is required");
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<ScalingRow> rows;
  std::vector<std::uint64_t> counts;
  if (cfg.sequence == "classical-vdc") {
    for (unsigned e : cfg.exponents) counts.push_back(checked_pow(cfg.q, e));
    rows = scaling_table_1d(
        [&](std::uint64_t n) {
          const unsigned e = [&] {
            unsigned k = 0;
            for (std::uint64_t v = n; v > 1; v /= cfg.q) ++k;
            return k;
          }();
          std::vector<std::uint64_t> xs(n);
          const std::uint64_t den = checked_pow(cfg.q, e);
          for (std::uint64_t i = 0; i < n; ++i) {
            const Fraction f = classical_vdc(i, cfg.q);
            xs[i] = f.num * (den / f.den);
          }
          return std::pair{std::move(xs), den};
        },
        counts);
  } else {
    const Poly p = modulus_of(cfg, ctx);
    const unsigned d = static_cast<unsigned>(p.degree());
    for (unsigned e : cfg.exponents) counts.push_back(checked_pow(cfg.q, d * e));
    std::optional<LaurentPrefix> theta;
    if (cfg.sequence != "vdc") theta = theta_of(cfg, ctx).series(ctx);
    auto generate = [&](std::uint64_t n) {
      const auto prec = run_precision(n, ctx->q(), d, cfg.extra);
      const LaurentPrefix phi = theta ? induce(*theta, p, prec.series_depth)
                                      : LaurentPrefix::fractional(ctx, {}, true);
      return HybridGenerator(phi, p, n, cfg.extra).generate_all(cfg.threads);
    };
    if (cfg.sequence == "hybrid") {
      rows = scaling_table([&](std::uint64_t n) { return to_point_set(generate(n)); }, counts, cfg.threads);
    } else if (cfg.sequence == "kronecker" || cfg.sequence == "vdc") {
      const bool first = cfg.sequence == "kronecker";
      rows = scaling_table_1d(
          [&](std::uint64_t n) {
            const auto pts = generate(n);
            std::vector<std::uint64_t> xs;
            xs.reserve(pts.size());
            for (const auto& pt : pts) xs.push_back(first ? pt.x.num : pt.y.num);
            return std::pair{std::move(xs), pts.front().x.den()};
          },
          counts);
    } else {
      throw DomainError("--sequence must be hybrid, kronecker, vdc or classical-vdc");
    }
  }
  Sink sink(cfg, "scaling.csv");
  write_scaling(sink.stream(), rows);
  sink.close();
  std::cerr << "elapsed " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << "s\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Digital hybrid sequences over F_q, Hankel certificates and exact star discrepancy"};
  app.require_subcommand(1);
  app.footer(
      "Polynomials are ascending coefficient codes: \"1 0 1\" is t^2 + 1, \"0 1\" is t.\n"
      "Coefficient files: line 1 q=<int>, optional deficiency=<int> and exact=1 lines,\n"
      "then whitespace-separated codes of a_1 a_2 ... for Theta = sum a_i t^-i.\n"
      "--theta-file also accepts search:D,L to search for a certified prefix.\n"
      "Output goes to --out <dir> (or $FFDISC_OUT), else stdout.\n"
      "Exit codes: 0 ok, 1 verification failed or search exhausted, 2 usage, 3 precision/resource.");
  Config cfg;

  auto add_q = [&](CLI::App* c) { c->add_option("--q", cfg.q, "field order q = p^n <= 65536")->required(); };
  auto add_common = [&](CLI::App* c) {
    c->add_option("--threads", cfg.threads, "worker threads (results do not depend on it)")
        ->check(CLI::Range(1u, 1024u));
    c->add_option("--out", cfg.out, "output directory");
  };
  auto add_theta = [&](CLI::App* c) {
    c->add_option("--theta-file", cfg.theta, "coefficient file of Theta, or search:D,L");
  };
  auto add_p = [&](CLI::App* c) {
    c->add_option("--P", cfg.poly, "irreducible P(t) as ascending codes, e.g. \"1 0 1\"")->capture_default_str();
  };
  auto add_extra = [&](CLI::App* c) {
    c->add_option("--precision-extra", cfg.extra, "guard blocks beyond floor(log_{q^d} N)")
        ->capture_default_str()
        ->check(CLI::Range(1u, 64u));
  };

  auto* gen = app.add_subcommand("gen", "generate hybrid points (Kronecker of Theta(P), Van der Corput of P)");
  add_q(gen);
  add_p(gen);
  add_theta(gen);
  gen->add_option("--count", cfg.count, "number of points n = 0..count-1")->required();
  add_extra(gen);
  add_common(gen);

  auto* ind = app.add_subcommand("induce", "coefficients of Theta(P) = sum a_i P^-i down to t^-depth");
  add_q(ind);
  add_p(ind);
  add_theta(ind);
  ind->add_option("--depth", cfg.depth, "number of output coefficients")->required();
  add_common(ind);

  auto* ver = app.add_subcommand("verify-bad", "check Hankel full-rank conditions of a prefix");
  add_q(ver);
  add_theta(ver);
  ver->add_option("--deficiency", cfg.deficiency, "deficiency D (default: file header, else 0)");
  ver->add_option("--depth", cfg.depth, "use the first depth coefficients");
  ver->add_flag("--list-pairs", cfg.list_pairs, "list every checked (k,l) pair");
  add_common(ver);

  auto* sea = app.add_subcommand("search-bad", "lexicographically smallest prefix passing verify-bad");
  add_q(sea);
  sea->add_option("--deficiency", cfg.deficiency, "deficiency D (default 0)");
  sea->add_option("--depth", cfg.depth, "prefix length L")->required();
  add_common(sea);

  auto* dis = app.add_subcommand("discrepancy", "exact star discrepancy of a point CSV");
  add_q(dis);
  dis->add_option("input", cfg.input, "point CSV (default stdin)");
  add_common(dis);

  auto* sca = app.add_subcommand("scaling", "D*_N for N = q^(d e) over --exponents");
  add_q(sca);
  add_p(sca);
  add_theta(sca);
  sca->add_option("--exponents", cfg.exponents, "ascending exponents e")->required()->delimiter(',');
  sca->add_option("--sequence", cfg.sequence, "hybrid, kronecker, vdc or classical-vdc")->capture_default_str();
  add_extra(sca);
  add_common(sca);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen(cfg);
    if (*ind) return cmd_induce(cfg);
    if (*ver) return cmd_verify_bad(cfg);
    if (*sea) return cmd_search_bad(cfg);
    if (*dis) return cmd_discrepancy(cfg);
    if (*sca) return cmd_scaling(cfg);
  } catch (const SearchExhausted& e) {
    std::cerr << "search exhausted: " << e.what() << '\n';
    return kFail;
  } catch (const PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << '\n';
    return kPrecision;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return kPrecision;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPrecision;
  }
  return kUsage;
}
