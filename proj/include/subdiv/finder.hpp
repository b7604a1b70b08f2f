#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subdiv/oracle.hpp"

namespace subdiv {

// Where a constructive search stopped, in machine-readable form.
struct StuckState {
  std::string phase;   // e.g. "precondition", "gadget-III", "graph-exhausted", "budget"
  std::string detail;
  int chain_length = 0;
  int chain_gadgets = 0;
  int contractions = 0;
  int live_vertices = 0;
  std::size_t live_arcs = 0;
};

std::string stuck_to_json(const StuckState& s);

enum class FinderStatus { Found, NotFound, BudgetExceeded };

std::string finder_status_name(FinderStatus s);

struct FinderOptions {
  // After the constructive procedure gets stuck, run the exhaustive oracle on the input
  // with the remaining budget. Disable to measure the constructive procedure alone.
  bool exact_fallback = true;
};

struct FinderResult {
  FinderStatus status = FinderStatus::NotFound;
  std::optional<SubdivisionCertificate> certificate;
  std::string route;  // "construction", "exact-search" or empty
  std::optional<StuckState> stuck;
  std::vector<std::string> log;  // JSON lines
  std::uint64_t nodes = 0;
  int iterations = 0;
};

// Runs the oracle for `pattern` on `d` and folds its verdict into `result`.
void run_exact_fallback(const Digraph& d, const Digraph& pattern, SearchBudget& budget, FinderResult& result);

}  // namespace subdiv
