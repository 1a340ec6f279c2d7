#pragma once

#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "mfsp/congruence.hpp"
#include "mfsp/scanner.hpp"
#include "mfsp/sieve_stats.hpp"

namespace mfsp {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;

Json to_json(const Rational& r);
Json to_json(const CongruenceSystem& system);
Json to_json(const ScanReport& report);
Json to_json(const OrderingTable& table);
Json to_json(const SieveEstimate& estimate);

/// Rebuilds a system from its JSON form (only k, K and a are read; the
/// congruences and solution are recomputed and must match when present).
CongruenceSystem congruence_system_from_json(const Json& j);

/// Columns: p, f(p+1)..f(p+k) as exact fractions, approx_f(p+1)..approx_f(p+k),
/// rough, squarefree, in_box. Flags absent on the direct route are left empty.
void write_tuples_csv(std::ostream& os, std::span<const TupleRecord> records, unsigned k);

/// Columns: x, observed, main_term, normalized.
void write_sieve_csv(std::ostream& os, std::span<const SieveEstimate> rows);

/// "%.12g"-style decimal used for every approximate column.
std::string format_decimal(double v);

}  // namespace mfsp
