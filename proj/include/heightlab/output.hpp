#pragma once

// Serialization of results: structured text (JSON with sorted keys and
// exact rationals as strings), CSV with round-trip doubles, binary PGM.

#include <ostream>
#include <string>

#include <json.hpp>

#include "heightlab/bifurcation.hpp"
#include "heightlab/degeneration.hpp"
#include "heightlab/dynamics.hpp"
#include "heightlab/family.hpp"

namespace heightlab {

using Json = nlohmann::json;

/// Shortest text that parses back to the same double ("nan", "inf" for
/// non-finite values).
std::string format_double(double x);

Json to_json(const Rational& r);
Json to_json(const Poly& p);
Json to_json(const ProjPointK& p);
Json to_json(const RationalMapFamily& f);
Json to_json(const HeightEnclosure& h);
Json to_json(const Orbit& o);
Json to_json(const Classification& c);
Json to_json(const PlaceReport& r);
Json to_json(const OrderSequence& s);
Json to_json(const RootSet& r);
Json to_json(const DensityReport& r);

/// Indented JSON followed by a newline.
void write_text(std::ostream& os, const Json& doc);

/// Columns re(t), im(t), n, G_n.
void write_escape_csv(std::ostream& os, const EscapeGrid& g);
/// G at the last iterate, rows = radial rings (inner first), columns =
/// angles, scaled linearly from the finite min to max.
void write_escape_pgm(std::ostream& os, const EscapeGrid& g);

/// Columns re(t), im(t), first_activity, nan.
void write_activity_csv(std::ostream& os, const ActivityMap& a);
/// P5, maxval 255, value min(255, round(255 i / cap)).
void write_activity_pgm(std::ostream& os, const ActivityMap& a);

}  // namespace heightlab
