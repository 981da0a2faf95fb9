#include "heightlab/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace heightlab {

namespace {

Json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

Json complex_json(cd z) { return Json::array({number(z.real()), number(z.imag())}); }

void write_pgm_header(std::ostream& os, int width, int height) {
  os << "P5\n" << width << " " << height << "\n255\n";
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Json to_json(const Rational& r) { return r.get_str(); }

Json to_json(const Poly& p) { return p.to_string(); }

Json to_json(const ProjPointK& p) {
  return Json{{"a1", p.a1().to_string()}, {"a2", p.a2().to_string()}, {"degree", p.degree()},
              {"text", p.to_string()}};
}

Json to_json(const RationalMapFamily& f) {
  return Json{{"coeff_degree", f.coeff_degree()},
              {"d_total", f.d_total()},
              {"degree", f.degree()},
              {"expression", f.to_string()},
              {"q_infinity", f.q_infinity()},
              {"resultant", f.resultant().to_string()}};
}

Json to_json(const HeightEnclosure& h) {
  return Json{{"degree_sequence", h.degree_sequence},
              {"hi", to_json(h.hi)},
              {"lo", to_json(h.lo)},
              {"max_deviation", h.max_deviation},
              {"n_used", h.n_used},
              {"preperiodic", h.preperiodic},
              {"width", to_json(Rational(h.hi - h.lo))}};
}

Json to_json(const Orbit& o) {
  Json points = Json::array();
  for (const auto& p : o.points) points.push_back(to_json(p));
  Json cancelled = Json::array();
  for (const auto& c : o.cancelled) cancelled.push_back(c.to_string());
  Json doc{{"cancelled", cancelled}, {"drops", o.drops}, {"max_deviation", o.max_deviation}, {"points", points}};
  if (o.cycle) {
    doc["cycle"] = Json{{"period", o.cycle->period}, {"preperiod", o.cycle->preperiod}};
  } else {
    doc["cycle"] = nullptr;
  }
  return doc;
}

Json to_json(const Classification& c) {
  if (const auto* p = std::get_if<Preperiodic>(&c)) {
    return Json{{"kind", "preperiodic"}, {"period", p->cycle.period}, {"preperiod", p->cycle.preperiod}};
  }
  if (const auto* p = std::get_if<PositiveHeight>(&c)) {
    return Json{{"kind", "positive_height"}, {"enclosure", to_json(p->enclosure)}};
  }
  const auto& u = std::get<Undetermined>(c);
  return Json{{"kind", "undetermined"}, {"cap", u.cap}, {"enclosure", to_json(u.enclosure)}};
}

Json to_json(const PlaceReport& r) {
  Json places = Json::array();
  for (const auto& p : r.finite_places) {
    Json e{{"multiplicity", p.multiplicity}, {"root", complex_json(p.root)}};
    e["exact"] = p.exact ? Json(p.exact->get_str()) : Json(nullptr);
    places.push_back(e);
  }
  return Json{{"d_total", r.d_total}, {"finite_places", places}, {"q_infinity", r.q_infinity}};
}

Json to_json(const OrderSequence& s) {
  Json a = Json::array();
  for (const auto& x : s.a) a.push_back(x.get_str());
  Json doc{{"a", a}, {"d", s.d}, {"k", s.k}, {"q", s.q},
           {"mode", s.mode_used == OrderMode::Series ? "series" : "exact"}};
  if (s.mode_used == OrderMode::Series) doc["precision"] = s.precision;
  if (s.restart_index) {
    doc["restart_index"] = *s.restart_index;
    doc["restart_increments"] = s.restart_increments;
  }
  return doc;
}

Json to_json(const RootSet& r) {
  auto list = [](const std::vector<ParameterRoot>& roots) {
    Json out = Json::array();
    for (const auto& x : roots) {
      out.push_back(Json{{"bridge_radius", number(x.bridge_radius)},
                         {"collision", number(x.collision)},
                         {"multiplicity", x.multiplicity},
                         {"root", complex_json(x.value)}});
    }
    return out;
  };
  return Json{{"bridged", r.bridged},
              {"degree", r.degree},
              {"iterations", r.iterations},
              {"m", r.m},
              {"n", r.n},
              {"squarefree_certified", r.squarefree_certified},
              {"unverified", list(r.unverified)},
              {"verified", list(r.verified)}};
}

Json to_json(const DensityReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json j{{"m", e.m}, {"n", e.n}, {"identically_preperiodic", e.identically_preperiodic}};
    if (e.identically_preperiodic) {
      j["note"] = "identically preperiodic; density trivial";
    } else {
      j["fraction_in_grid"] = number(e.fraction_in_grid);
      j["median_distance"] = number(e.median_distance);
      j["roots"] = e.roots;
      j["roots_in_grid"] = e.roots_in_grid;
    }
    entries.push_back(j);
  }
  return Json{{"active_pixels", r.active_pixels}, {"entries", entries}, {"nonincreasing", r.nonincreasing}};
}

void write_text(std::ostream& os, const Json& doc) { os << doc.dump(2) << "\n"; }

void write_escape_csv(std::ostream& os, const EscapeGrid& g) {
  os << "re,im,n,G\n";
  for (std::size_t c = 0; c < g.cells.size(); ++c) {
    const std::string re = format_double(g.cells[c].real());
    const std::string im = format_double(g.cells[c].imag());
    for (int n = 0; n <= g.iterations; ++n) {
      os << re << "," << im << "," << n << "," << format_double(g.value(c, n)) << "\n";
    }
  }
}

void write_escape_pgm(std::ostream& os, const EscapeGrid& g) {
  const int w = g.spec.angular, h = g.spec.radial;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t c = 0; c < g.cells.size(); ++c) {
    double v = g.value(c, g.iterations);
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  write_pgm_header(os, w, h);
  for (std::size_t c = 0; c < g.cells.size(); ++c) {
    double v = g.value(c, g.iterations);
    int px = 0;
    if (std::isfinite(v) && hi > lo) px = static_cast<int>(std::lround(255.0 * (v - lo) / (hi - lo)));
    os.put(static_cast<char>(static_cast<unsigned char>(std::clamp(px, 0, 255))));
  }
}

void write_activity_csv(std::ostream& os, const ActivityMap& a) {
  os << "re,im,first_activity,nan\n";
  std::size_t k = 0;
  for (int r = 0; r < a.grid.height; ++r) {
    for (int c = 0; c < a.grid.width; ++c, ++k) {
      cd t = a.grid.pixel(c, r);
      os << format_double(t.real()) << "," << format_double(t.imag()) << "," << a.values[k] << ","
         << static_cast<int>(a.nan_flags[k]) << "\n";
    }
  }
}

void write_activity_pgm(std::ostream& os, const ActivityMap& a) {
  write_pgm_header(os, a.grid.width, a.grid.height);
  for (std::int32_t v : a.values) {
    long px = std::lround(255.0 * static_cast<double>(v) / static_cast<double>(a.cap));
    os.put(static_cast<char>(static_cast<unsigned char>(std::min(255L, px))));
  }
}

}  // namespace heightlab
