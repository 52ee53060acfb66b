//
// Copyright 2026 The Broadband DP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef BROADBAND_DP_ACCOUNTANT_H_
#define BROADBAND_DP_ACCOUNTANT_H_

#include <optional>
#include <string>
#include "absl/strings/string_view.h"
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/time/time.h"
#include "absl/types/span.h"
#include "broadband_dp/epsilon.h"

namespace broadband_dp {

// Basic composition for pure epsilon-DP. Both reject an empty list and any
// non-positive entry.
absl::StatusOr<Epsilon> SequentialCompose(absl::Span<const Epsilon> epsilons);
// The caller asserts the queries touch pairwise-disjoint data.
absl::StatusOr<Epsilon> ParallelCompose(absl::Span<const Epsilon> epsilons);

// A release plan: leaves are individual queries, inner nodes say how their
// children compose.
//
// Disjointness below a PARALLEL node is declared by whoever writes the plan.
// It is only checked structurally (no query label may appear in two
// branches); data-level disjointness cannot be verified here.
class QueryPlan {
 public:
  enum class Kind { kLeaf, kSequential, kParallel };

  static QueryPlan Leaf(std::string label, Epsilon epsilon);
  static QueryPlan Sequential(std::vector<QueryPlan> children);
  static QueryPlan Parallel(std::vector<QueryPlan> children);

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  Epsilon epsilon() const { return epsilon_; }
  const std::vector<QueryPlan>& children() const { return children_; }

  // Compact text form, e.g. "SEQ(PAR(L:0.1,H:0.1),PAR(M:0.1,O:0.1))".
  std::string Describe() const;

 private:
  QueryPlan(Kind kind, std::string label, Epsilon epsilon,
            std::vector<QueryPlan> children)
      : kind_(kind),
        label_(std::move(label)),
        epsilon_(epsilon),
        children_(std::move(children)) {}

  Kind kind_;
  std::string label_;
  Epsilon epsilon_;
  std::vector<QueryPlan> children_;
};

// The coverage release: the two speed counts (L, H) partition the telemetry
// devices, the two services counts (M, O) partition the devices again, and
// the two partitions are queried in sequence.
//
//   SEQ( PAR(L, H), PAR(M, O) )
QueryPlan CoverageReleasePlan(Epsilon per_query_epsilon);

// Leaf -> its epsilon; SEQUENTIAL -> sum of children; PARALLEL -> max.
// Fails on an empty inner node, a non-positive leaf, an empty label, or a
// label repeated across the branches of a PARALLEL node.
absl::StatusOr<Epsilon> TotalEpsilon(const QueryPlan& plan);

struct LedgerEntry {
  absl::Time timestamp;
  std::string description;
  Epsilon charged;
};

// Budget-exceeded errors carry the request and what was left. Returns
// nullopt for any other status.
struct BudgetShortfall {
  Epsilon requested;
  Epsilon remaining;
};
std::optional<BudgetShortfall> GetBudgetShortfall(const absl::Status& status);

// Running privacy spend against a fixed budget. Single writer: concurrent
// charges must be serialized by the caller.
class BudgetLedger {
 public:
  static absl::StatusOr<BudgetLedger> Create(Epsilon budget);

  Epsilon budget() const { return budget_; }
  Epsilon spent() const { return spent_; }
  Epsilon remaining() const;
  const std::vector<LedgerEntry>& entries() const { return entries_; }

  // Appends an entry for the plan's total epsilon if it fits in what is
  // left. On any error the ledger is left untouched.
  absl::StatusOr<LedgerEntry> Charge(const QueryPlan& plan, absl::Time now);
  absl::StatusOr<LedgerEntry> Charge(std::string description, Epsilon epsilon,
                                     absl::Time now);

 private:
  explicit BudgetLedger(Epsilon budget) : budget_(budget) {}

  Epsilon budget_;
  Epsilon spent_;
  std::vector<LedgerEntry> entries_;
};

// Plain-text journal, one entry per line:
//   <RFC 3339 UTC timestamp> TAB <plan description> TAB <epsilon decimal>
std::string FormatJournalLine(const LedgerEntry& entry);
absl::StatusOr<LedgerEntry> ParseJournalLine(absl::string_view line);

// Replays a journal into a fresh ledger. A missing file is an empty journal.
absl::StatusOr<BudgetLedger> LoadJournal(const std::string& path,
                                         Epsilon budget);
absl::Status AppendToJournal(const std::string& path,
                             const LedgerEntry& entry);

}  // namespace broadband_dp

#endif  // BROADBAND_DP_ACCOUNTANT_H_
