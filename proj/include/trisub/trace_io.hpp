#pragma once

#include <json.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "trisub/certify.hpp"
#include "trisub/chain.hpp"

namespace trisub {

// Writers for the on-disk formats. All floating point is rendered with 17
// significant digits so values round-trip through text.

struct Provenance {
  std::string command;
  std::string seed;  // decimal seed, or "none" for deterministic subcommands
  std::string version;
};

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv_provenance(std::ostream& os, const Provenance& p) {
  os << "# command: " << p.command << "\n";
  os << "# seed: " << p.seed << "\n";
  os << "# version: " << p.version << "\n";
}

inline nlohmann::json provenance_json(const Provenance& p) {
  return {{"command", p.command}, {"seed", p.seed}, {"version", p.version}};
}

// ---- traces ----

inline void write_csv(std::ostream& os, const FlatTraceData& t, const Provenance& p) {
  write_csv_provenance(os, p);
  os << "step,roll,x\n";
  for (std::size_t n = 0; n < t.steps.size(); ++n)
    os << n << "," << t.steps[n].roll << "," << fmt17(t.steps[n].x) << "\n";
}

inline void write_csv(std::ostream& os, const TriangleTraceData& t, const Provenance& p) {
  write_csv_provenance(os, p);
  os << "step,roll,x,y,J,angle\n";
  for (std::size_t n = 0; n < t.steps.size(); ++n) {
    const auto& s = t.steps[n];
    os << n << "," << s.roll << "," << fmt17(s.x) << "," << fmt17(s.y) << "," << fmt17(s.j) << ","
       << fmt17(s.angle) << "\n";
  }
}

inline void write_csv(std::ostream& os, const CoupledRun& r, const Provenance& p) {
  write_csv_provenance(os, p);
  os << "step,roll,x,y,z,gap\n";
  for (std::size_t n = 0; n < r.gap.size(); ++n) {
    const auto& s = r.planar.steps[n];
    os << n << "," << s.roll << "," << fmt17(s.x) << "," << fmt17(s.y) << ","
       << fmt17(r.flat.steps[n].x) << "," << fmt17(r.gap[n]) << "\n";
  }
}

// JSON carries the same numbers as strings where they may be non-finite.
inline nlohmann::json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return fmt17(v);
}

inline nlohmann::json to_json(const FlatTraceData& t, const Provenance& p) {
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t n = 0; n < t.steps.size(); ++n)
    steps.push_back({{"step", n}, {"roll", t.steps[n].roll}, {"x", t.steps[n].x}});
  return {{"provenance", provenance_json(p)},
          {"seed", t.seed},
          {"start", t.start},
          {"steps", steps}};
}

inline nlohmann::json to_json(const TriangleTraceData& t, const Provenance& p) {
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t n = 0; n < t.steps.size(); ++n) {
    const auto& s = t.steps[n];
    steps.push_back({{"step", n},
                     {"roll", s.roll},
                     {"x", s.x},
                     {"y", s.y},
                     {"J", finite_or_string(s.j)},
                     {"angle", finite_or_string(s.angle)}});
  }
  return {{"provenance", provenance_json(p)},
          {"seed", t.seed},
          {"start", {{"x", t.start.x}, {"y", t.start.y}}},
          {"steps", steps}};
}

inline nlohmann::json to_json(const CoupledRun& r, const Provenance& p) {
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t n = 0; n < r.gap.size(); ++n) {
    const auto& s = r.planar.steps[n];
    steps.push_back({{"step", n},
                     {"roll", s.roll},
                     {"x", s.x},
                     {"y", s.y},
                     {"z", r.flat.steps[n].x},
                     {"gap", r.gap[n]}});
  }
  return {{"provenance", provenance_json(p)}, {"seed", r.planar.seed}, {"steps", steps}};
}

// ---- histograms ----

inline void write_csv(std::ostream& os, const Histogram& h, const Provenance& p) {
  write_csv_provenance(os, p);
  os << "bin_low,bin_high,mass\n";
  for (int k = 0; k < h.bins; ++k)
    os << fmt17(h.bin_low(k)) << "," << fmt17(h.bin_high(k)) << "," << fmt17(h.mass[std::size_t(k)])
       << "\n";
}

inline nlohmann::json to_json(const Histogram& h, const Provenance& p) {
  nlohmann::json bins = nlohmann::json::array();
  for (int k = 0; k < h.bins; ++k)
    bins.push_back(
        {{"bin_low", h.bin_low(k)}, {"bin_high", h.bin_high(k)}, {"mass", h.mass[std::size_t(k)]}});
  return {{"provenance", provenance_json(p)}, {"samples", h.samples}, {"bins", bins}};
}

// ---- scalar records ----

inline void write_scalar_csv(std::ostream& os, const Provenance& p, const std::string& name,
                             double value) {
  write_csv_provenance(os, p);
  os << "quantity,value\n" << name << "," << fmt17(value) << "\n";
}

inline nlohmann::json scalar_json(const Provenance& p, const std::string& name, double value) {
  return {{"provenance", provenance_json(p)}, {name, value}};
}

// ---- certification reports ----

inline nlohmann::json to_json(const RootBracket& b) {
  return {{"lo", b.lo.str()}, {"hi", b.hi.str()}, {"approx", b.midpoint()}};
}

inline nlohmann::json to_json(const IntervalCert& c) {
  nlohmann::json j{
      {"interval", interval_name(c.interval)},
      {"degree", c.degree},
      {"root_count", c.root_count},
      {"endpoint_values",
       {{"left",
         {{"x", interval_left(c.interval).str()},
          {"num", c.value_left.num().get_str()},
          {"den", c.value_left.den().get_str()}}},
        {"right",
         {{"x", interval_right(c.interval).str()},
          {"num", c.value_right.num().get_str()},
          {"den", c.value_right.den().get_str()}}}}},
      {"interior_value_sign", c.value_interior.sign()},
      {"verdict", c.verdict}};
  j["nearest_external_roots"] = {
      {"left", c.nearest_left ? to_json(*c.nearest_left) : nlohmann::json(nullptr)},
      {"right", c.nearest_right ? to_json(*c.nearest_right) : nlohmann::json(nullptr)}};
  return j;
}

inline nlohmann::json to_json(const CertReport& r) {
  nlohmann::json intervals = nlohmann::json::array();
  for (const auto& c : r.intervals) intervals.push_back(to_json(c));
  nlohmann::json orderings = nlohmann::json::array();
  for (const auto& o : r.orderings) orderings.push_back({{"check", o.label}, {"holds", o.holds}});
  return {{"what", r.what}, {"intervals", intervals}, {"orderings", orderings}, {"verdict", r.verdict}};
}

inline nlohmann::json to_json(const GridCertResult& g) {
  return {{"n", g.n},
          {"grid_min", g.grid_min},
          {"slack", g.slack},
          {"margin", g.margin},
          {"verdict", g.verdict}};
}

inline nlohmann::json to_json(const LipschitzResult& l) {
  return {{"order", l.order}, {"grid_n", l.grid_n}, {"product", l.product}, {"verdict", l.verdict}};
}

}  // namespace trisub
