#pragma once

// JSON persistence for proof certificates (schema version 1). Sequences
// serialize as {kind, orders, scalar_kind, coeffs} with one
// [re_lo, re_hi, im_lo, im_hi] row per coefficient in row-major multi-index
// order; real scalars carry exact-zero imaginary parts.

#include <json.hpp>

#include "smproof/connection.hpp"

namespace smproof {

using json = nlohmann::json;

json to_json(const Interval& v);
Interval interval_from_json(const json& j);

json to_json(const ComplexInterval& v);
ComplexInterval complex_interval_from_json(const json& j);

json to_json(const Taylor2Seq<ComplexInterval>& u);
Taylor2Seq<ComplexInterval> taylor2_from_json(const json& j);

json to_json(const ChebSeq<double>& u);
ChebSeq<double> cheb_from_json(const json& j);

json to_json(const EquilibriumCertificate& c);
EquilibriumCertificate equilibrium_from_json(const json& j);

json to_json(const EigenCertificate& c);
EigenCertificate eigen_from_json(const json& j);

json to_json(const ManifoldCertificate& c);
ManifoldCertificate manifold_from_json(const json& j);

json to_json(const ConnectionCertificate& c);
ConnectionCertificate connection_from_json(const json& j);

} // namespace smproof
