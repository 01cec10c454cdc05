#pragma once

// JSON forms of the library reports. Field order is fixed and floating point
// values are rounded to 12 significant digits, so equal inputs give
// byte-identical output.

#include <string>

#include <json.hpp>

#include "lcongr/checks.hpp"
#include "lcongr/density.hpp"
#include "lcongr/kn.hpp"
#include "lcongr/lseries.hpp"
#include "lcongr/matgrp.hpp"
#include "lcongr/modsym.hpp"

namespace lcongr {

using Json = nlohmann::ordered_json;

Json number(double x);
Json to_json(const Rational& x);
Json to_json(const BigRational& x);
Json to_json(const CycNumber& x);
Json to_json(const DensityProfile& p);
Json to_json(const std::array<Rational, 3>& t);
Json to_json(const Mat2& m);

Json to_json(const LValueReport& r);
Json to_json(const SymbolValue& r);
Json to_json(const HeckeReport& r);
Json to_json(const CongruenceReport& r);
Json to_json(const ParityReport& r);
Json to_json(const ValuationReport& r);
Json to_json(const UnitReport& r);
Json to_json(const Section5Row& r);
Json to_json(const RowCheck& r);
Json to_json(const ConjugacyReport& r);
Json to_json(const SweepResult& r);
Json to_json(const SpotCheck& s);
Json to_json(const Prediction& p);
Json to_json(const GcdEstimate& g);
Json to_json(const ResiduePrediction& r);
Json to_json(const KNRecord& r);
Json to_json(const DeltaPrime& d);

Json error_json(const std::exception& e);
std::string dump(const Json& j);

}  // namespace lcongr
