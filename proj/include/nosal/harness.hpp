#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nosal/constructions.hpp"
#include "nosal/graph.hpp"

namespace nosal {

/// Pass and Fail are reserved for claims that hold unconditionally (exact
/// identities, explicit floors on certified graphs). Asymptotic claims are
/// ReportedOnly with their margin.
enum class Verdict { Pass, Fail, ReportedOnly };

const char* to_string(Verdict v) noexcept;

struct VerificationRow {
  std::string claim;
  std::string graph;
  double observed = 0.0;
  double bound = 0.0;
  /// Signed slack: positive means the claim holds with room to spare
  /// (observed - bound for floors, bound - observed for ceilings).
  double margin = 0.0;
  Verdict verdict = Verdict::ReportedOnly;
  std::string note;
};

struct GraphCase {
  std::string descriptor;
  Graph graph;
  /// Self-check of the construction's predictions, when it came from one.
  std::vector<PredictionCheck> predictions;
  /// Replaces the codegree 4-cycle count. Only for harness self-tests.
  std::optional<std::int64_t> c4_override;
};

/// Families accepted by make_case: construction names, "random", and
/// "search_<objective>" for the three minimizing objectives.
std::vector<std::string> family_names();

/// A graph of the family with about m edges. Deterministic in (m, seed).
GraphCase make_case(const std::string& family, std::int64_t m, std::uint64_t seed,
                    std::size_t search_steps = 2000);

/// Claim ids every graph produces a row for (inapplicable claims give a
/// ReportedOnly row whose note starts with "n/a").
const std::vector<std::string>& claim_manifest();

/// Manifest ids with no row in `rows`.
std::vector<std::string> missing_claims(const std::vector<VerificationRow>& rows);

bool any_failed(const std::vector<VerificationRow>& rows);

std::vector<VerificationRow> verify_graph(const GraphCase& c, double tol = 1e-9);

struct SuiteOptions {
  std::vector<std::string> families;
  std::vector<std::int64_t> m_values;
  std::uint64_t seed = 1;
  int threads = 1;
  double tol = 1e-9;
  std::size_t search_steps = 2000;
};

/// Rows for every (family, m) pair in input order, graphs checked
/// concurrently.
std::vector<VerificationRow> verify_suite(const SuiteOptions& opts);

std::string rows_json(const std::vector<VerificationRow>& rows);
std::string rows_csv(const std::vector<VerificationRow>& rows);
std::string rows_text(const std::vector<VerificationRow>& rows);

struct Table1Row {
  std::string quantity;
  /// Graph attaining the smallest observed value among certified candidates.
  std::string graph;
  double observed = 0.0;
  std::string scaling;
  double normalized = 0.0;
  /// The asymptotic statement for the edge-spectral condition.
  std::string reference;
};

/// Needs m >= 100. search_steps > 0 adds search incumbents as candidates.
std::vector<Table1Row> table1_report(std::int64_t m, std::uint64_t seed, std::size_t search_steps = 0);

std::string table1_json(const std::vector<Table1Row>& rows, std::int64_t m);
std::string table1_csv(const std::vector<Table1Row>& rows);
std::string table1_text(const std::vector<Table1Row>& rows);

/// Largest codegree over all vertex pairs, i.e. the largest K_{2,t}.
std::int64_t largest_k2t(const Graph& g);

}  // namespace nosal
