#pragma once

// Text formats: coefficient files, polynomial literals, point-stream CSV,
// Hankel certificates and discrepancy tables.
//
// Coefficient file:
//   q=<int>
//   deficiency=<int>      (optional)
//   exact=1               (optional; omitted coefficients are zero)
//   a_1 a_2 a_3 ...       (whitespace-separated codes, any number of lines)

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ffdisc/discrepancy.hpp"
#include "ffdisc/errors.hpp"
#include "ffdisc/fixed_point.hpp"
#include "ffdisc/hankel.hpp"
#include "ffdisc/laurent.hpp"
#include "ffdisc/poly.hpp"

namespace ffdisc {

struct CoefficientFile {
  std::uint32_t q = 0;
  std::optional<unsigned> deficiency;
  bool exact = false;
  std::vector<std::uint32_t> codes;  // a_1, a_2, ...

  LaurentPrefix series(const FieldPtr& ctx) const {
    if (ctx->q() != q)
      throw DomainError("coefficient file is over q=" + std::to_string(q) + ", expected q=" + std::to_string(ctx->q()));
    return LaurentPrefix::fractional(ctx, codes, exact);
  }
};

namespace detail {

inline std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw DomainError(std::string(what) + ": not a non-negative integer: '" + std::string(s) + "'");
  return v;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::optional<std::uint64_t> header_value(std::string_view line, std::string_view key) {
  line = trim(line);
  if (line.size() <= key.size() || line.substr(0, key.size()) != key || line[key.size()] != '=') return std::nullopt;
  return parse_uint(trim(line.substr(key.size() + 1)), key);
}

}  // namespace detail

inline CoefficientFile read_coefficients(std::istream& in) {
  CoefficientFile out;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("coefficient file: empty input");
  const auto q = detail::header_value(line, "q");
  if (!q) throw DomainError("coefficient file: first line must be q=<int>");
  out.q = static_cast<std::uint32_t>(*q);
  const FieldPtr ctx = FieldCtx::of_order(out.q);
  bool headers = true;
  while (std::getline(in, line)) {
    if (headers) {
      if (auto d = detail::header_value(line, "deficiency")) {
        out.deficiency = static_cast<unsigned>(*d);
        continue;
      }
      if (auto e = detail::header_value(line, "exact")) {
        out.exact = *e != 0;
        continue;
      }
      headers = false;
    }
    std::istringstream words(line);
    std::string w;
    while (words >> w) {
      const auto code = detail::parse_uint(w, "coefficient");
      if (code >= out.q)
        throw DomainError("coefficient file: code " + w + " out of range for q=" + std::to_string(out.q));
      out.codes.push_back(static_cast<std::uint32_t>(code));
    }
  }
  return out;
}

inline void write_coefficients(std::ostream& out, const CoefficientFile& f, std::size_t per_line = 32) {
  out << "q=" << f.q << '\n';
  if (f.deficiency) out << "deficiency=" << *f.deficiency << '\n';
  if (f.exact) out << "exact=1\n";
  for (std::size_t i = 0; i < f.codes.size(); ++i) {
    out << f.codes[i];
    out << ((i + 1) % per_line == 0 || i + 1 == f.codes.size() ? '\n' : ' ');
  }
}

// "1 0 1" -> 1 + t^2 (ascending codes).
inline Poly parse_poly(std::string_view text, const FieldPtr& ctx) {
  std::vector<std::uint32_t> c;
  std::istringstream in{std::string(text)};
  std::string w;
  while (in >> w) {
    const auto code = detail::parse_uint(w, "polynomial coefficient");
    if (code >= ctx->q())
      throw DomainError("polynomial coefficient " + w + " out of range for q=" + std::to_string(ctx->q()));
    c.push_back(static_cast<std::uint32_t>(code));
  }
  return {ctx, std::move(c)};
}

inline std::string format_poly(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(p.coeffs()[i]);
  }
  return s;
}

inline constexpr std::string_view kPointHeader = "n,x_num,y_num,log_den,x,y";

namespace detail {

inline char* put_uint(char* p, std::uint64_t v) { return std::to_chars(p, p + 24, v).ptr; }

inline char* put_double(char* p, double v) { return std::to_chars(p, p + 32, v).ptr; }

}  // namespace detail

// One CSV row per point; rows are buffered to keep large streams fast.
inline void write_points(std::ostream& out, std::span<const Point2D> pts, bool header = true) {
  if (header) out << kPointHeader << '\n';
  std::string buf;
  buf.reserve(1 << 20);
  char row[160];
  for (const auto& p : pts) {
    char* e = row;
    e = detail::put_uint(e, p.index);
    *e++ = ',';
    e = detail::put_uint(e, p.x.num);
    *e++ = ',';
    e = detail::put_uint(e, p.y.num);
    *e++ = ',';
    e = detail::put_uint(e, p.x.log_den);
    *e++ = ',';
    e = detail::put_double(e, p.x.to_double());
    *e++ = ',';
    e = detail::put_double(e, p.y.to_double());
    *e++ = '\n';
    buf.append(row, e);
    if (buf.size() > (1u << 20) - sizeof(row)) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

// Reads the exact columns of a point stream; all rows must share log_den.
inline PointSet2D read_points(std::istream& in, std::uint32_t q) {
  PointSet2D out;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("point stream: missing header");
  if (detail::trim(line).substr(0, 19) != "n,x_num,y_num,log_d")
    throw DomainError("point stream: header must start with n,x_num,y_num,log_den");
  std::optional<unsigned> log_den;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    std::string_view rest = line;
    std::uint64_t f[4];
    for (int i = 0; i < 4; ++i) {
      const auto comma = rest.find(',');
      f[i] = detail::parse_uint(detail::trim(rest.substr(0, comma)), "point stream line " + std::to_string(lineno));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      if (i < 3 && comma == std::string_view::npos)
        throw DomainError("point stream line " + std::to_string(lineno) + ": expected at least 4 columns");
    }
    if (!log_den) {
      log_den = static_cast<unsigned>(f[3]);
      out.den = checked_pow(q, *log_den);
    } else if (*log_den != f[3]) {
      throw DomainError("point stream line " + std::to_string(lineno) + ": log_den differs from earlier rows");
    }
    if (f[1] >= out.den || f[2] >= out.den)
      throw DomainError("point stream line " + std::to_string(lineno) + ": coordinate outside [0,1)");
    out.points.push_back({f[1], f[2]});
  }
  return out;
}

inline void write_certificate(std::ostream& out, const FieldCtx& f, std::span<const std::uint32_t> a,
                              const BadCertificate& cert) {
  out << "q=" << f.q() << '\n';
  out << "deficiency=" << cert.deficiency << '\n';
  out << "depth=" << cert.depth << '\n';
  out << "checked=" << cert.checked << '\n';
  out << "result=" << (cert.pass ? "pass" : "fail") << '\n';
  if (cert.first_failure) out << "first_failure=" << cert.first_failure->k << ',' << cert.first_failure->l << '\n';
  out << "prefix=";
  for (std::size_t i = 0; i < a.size(); ++i) out << (i ? " " : "") << a[i];
  out << '\n';
  if (!cert.checked_pairs.empty()) {
    out << "pairs=k,l\n";
    for (const auto& pr : cert.checked_pairs) out << pr.k << ',' << pr.l << '\n';
  }
}

inline constexpr std::string_view kDiscrepancyHeader =
    "N,dstar_num,dstar_den,ratio_log2,witness_x_num,witness_y_num,witness_den,witness_side";

// ratio_log2 is N * D* / log(N)^2 (natural log), empty for N = 1.
inline void write_discrepancy_row(std::ostream& out, const DiscrepancyReport& r) {
  out << r.n << ',' << to_string_u128(r.d_star.num) << ',' << to_string_u128(r.d_star.den) << ',';
  if (r.n > 1) {
    char b[32];
    const double lg = std::log(static_cast<double>(r.n));
    out << std::string_view(b, detail::put_double(b, static_cast<double>(r.n) * r.d_star.to_double() / (lg * lg)));
  }
  out << ',' << r.witness_x << ',' << r.witness_y << ',' << r.den << ',' << (r.witness_closed ? "closed" : "open")
      << '\n';
}

inline constexpr std::string_view kScalingHeader = "N,dstar_num,dstar_den,dstar,n_dstar,ratio";

inline void write_scaling(std::ostream& out, std::span<const ScalingRow> rows) {
  out << kScalingHeader << '\n';
  char b[32];
  for (const auto& r : rows) {
    out << r.n << ',' << to_string_u128(r.d_star.num) << ',' << to_string_u128(r.d_star.den) << ',';
    out << std::string_view(b, detail::put_double(b, r.d_star.to_double())) << ',';
    out << std::string_view(b, detail::put_double(b, r.n_dstar)) << ',';
    out << std::string_view(b, detail::put_double(b, r.ratio)) << '\n';
  }
}

}  // namespace ffdisc
