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

#include "broadband_dp/accountant.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/cord.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/time/time.h"
#include "absl/types/span.h"
#include "broadband_dp/epsilon.h"

namespace broadband_dp {
namespace {

constexpr char kShortfallPayloadUrl[] = "type.broadband_dp/BudgetShortfall";
constexpr char kTimeFormat[] = "%Y-%m-%d%ET%H:%M:%E*SZ";

absl::Status CheckComposable(absl::Span<const Epsilon> epsilons) {
  if (epsilons.empty()) {
    return absl::InvalidArgumentError("cannot compose an empty list of queries");
  }
  for (Epsilon e : epsilons) {
    if (!e.is_positive()) {
      return absl::InvalidArgumentError(
          absl::StrCat("query epsilon must be positive, got ", e.ToString()));
    }
  }
  return absl::OkStatus();
}

absl::Status CollectLabels(const QueryPlan& plan,
                           std::vector<std::string>& labels) {
  if (plan.kind() == QueryPlan::Kind::kLeaf) {
    labels.push_back(plan.label());
    return absl::OkStatus();
  }
  for (const QueryPlan& child : plan.children()) {
    absl::Status status = CollectLabels(child, labels);
    if (!status.ok()) return status;
  }
  return absl::OkStatus();
}

// No label may occur in more than one branch of a parallel node.
absl::Status CheckParallelBranches(const QueryPlan& plan) {
  absl::flat_hash_set<std::string> seen;
  for (const QueryPlan& child : plan.children()) {
    std::vector<std::string> labels;
    absl::Status status = CollectLabels(child, labels);
    if (!status.ok()) return status;
    absl::flat_hash_set<std::string> branch(labels.begin(), labels.end());
    for (const std::string& label : branch) {
      if (!seen.insert(label).second) {
        return absl::InvalidArgumentError(absl::StrCat(
            "query '", label,
            "' appears in two branches of a parallel node; parallel "
            "branches must cover disjoint data"));
      }
    }
  }
  return absl::OkStatus();
}

absl::Status ShortfallError(Epsilon requested, Epsilon remaining) {
  absl::Status status = absl::ResourceExhaustedError(
      absl::StrCat("privacy budget exceeded: requested ", requested.ToString(),
                   ", remaining ", remaining.ToString()));
  status.SetPayload(kShortfallPayloadUrl,
                    absl::Cord(absl::StrCat(requested.units(), ",",
                                            remaining.units())));
  return status;
}

}  // namespace

absl::StatusOr<Epsilon> SequentialCompose(absl::Span<const Epsilon> epsilons) {
  absl::Status status = CheckComposable(epsilons);
  if (!status.ok()) return status;
  Epsilon total;
  for (Epsilon e : epsilons) {
    absl::StatusOr<Epsilon> sum = total.Plus(e);
    if (!sum.ok()) return sum.status();
    total = *sum;
  }
  return total;
}

absl::StatusOr<Epsilon> ParallelCompose(absl::Span<const Epsilon> epsilons) {
  absl::Status status = CheckComposable(epsilons);
  if (!status.ok()) return status;
  return *std::max_element(epsilons.begin(), epsilons.end());
}

QueryPlan QueryPlan::Leaf(std::string label, Epsilon epsilon) {
  return QueryPlan(Kind::kLeaf, std::move(label), epsilon, {});
}

QueryPlan QueryPlan::Sequential(std::vector<QueryPlan> children) {
  return QueryPlan(Kind::kSequential, "", Epsilon(), std::move(children));
}

QueryPlan QueryPlan::Parallel(std::vector<QueryPlan> children) {
  return QueryPlan(Kind::kParallel, "", Epsilon(), std::move(children));
}

std::string QueryPlan::Describe() const {
  switch (kind_) {
    case Kind::kLeaf:
      return absl::StrCat(label_, ":", epsilon_.ToString());
    case Kind::kSequential:
    case Kind::kParallel: {
      std::vector<std::string> parts;
      parts.reserve(children_.size());
      for (const QueryPlan& child : children_) {
        parts.push_back(child.Describe());
      }
      return absl::StrCat(kind_ == Kind::kSequential ? "SEQ(" : "PAR(",
                          absl::StrJoin(parts, ","), ")");
    }
  }
  return "";
}

QueryPlan CoverageReleasePlan(Epsilon per_query_epsilon) {
  return QueryPlan::Sequential(
      {QueryPlan::Parallel({QueryPlan::Leaf("L", per_query_epsilon),
                            QueryPlan::Leaf("H", per_query_epsilon)}),
       QueryPlan::Parallel({QueryPlan::Leaf("M", per_query_epsilon),
                            QueryPlan::Leaf("O", per_query_epsilon)})});
}

absl::StatusOr<Epsilon> TotalEpsilon(const QueryPlan& plan) {
  if (plan.kind() == QueryPlan::Kind::kLeaf) {
    if (plan.label().empty()) {
      return absl::InvalidArgumentError("query plan leaf has no label");
    }
    if (!plan.epsilon().is_positive()) {
      return absl::InvalidArgumentError(
          absl::StrCat("query '", plan.label(),
                       "' must have positive epsilon, got ",
                       plan.epsilon().ToString()));
    }
    return plan.epsilon();
  }
  if (plan.children().empty()) {
    return absl::InvalidArgumentError("query plan has an empty composite node");
  }
  if (plan.kind() == QueryPlan::Kind::kParallel) {
    absl::Status status = CheckParallelBranches(plan);
    if (!status.ok()) return status;
  }
  std::vector<Epsilon> child_totals;
  child_totals.reserve(plan.children().size());
  for (const QueryPlan& child : plan.children()) {
    absl::StatusOr<Epsilon> total = TotalEpsilon(child);
    if (!total.ok()) return total.status();
    child_totals.push_back(*total);
  }
  return plan.kind() == QueryPlan::Kind::kSequential
             ? SequentialCompose(child_totals)
             : ParallelCompose(child_totals);
}

std::optional<BudgetShortfall> GetBudgetShortfall(const absl::Status& status) {
  auto payload = status.GetPayload(kShortfallPayloadUrl);
  if (!payload.has_value()) return std::nullopt;
  std::vector<std::string> parts =
      absl::StrSplit(std::string(*payload), ',');
  int64_t requested, remaining;
  if (parts.size() != 2 || !absl::SimpleAtoi(parts[0], &requested) ||
      !absl::SimpleAtoi(parts[1], &remaining)) {
    return std::nullopt;
  }
  return BudgetShortfall{Epsilon::FromUnits(requested),
                         Epsilon::FromUnits(remaining)};
}

absl::StatusOr<BudgetLedger> BudgetLedger::Create(Epsilon budget) {
  if (!budget.is_positive()) {
    return absl::InvalidArgumentError(
        absl::StrCat("privacy budget must be positive, got ",
                     budget.ToString()));
  }
  return BudgetLedger(budget);
}

Epsilon BudgetLedger::remaining() const {
  // spent <= budget is maintained by Charge, so this cannot overflow.
  return Epsilon::FromUnits(budget_.units() - spent_.units());
}

absl::StatusOr<LedgerEntry> BudgetLedger::Charge(const QueryPlan& plan,
                                                 absl::Time now) {
  absl::StatusOr<Epsilon> total = TotalEpsilon(plan);
  if (!total.ok()) return total.status();
  return Charge(plan.Describe(), *total, now);
}

absl::StatusOr<LedgerEntry> BudgetLedger::Charge(std::string description,
                                                 Epsilon epsilon,
                                                 absl::Time now) {
  if (!epsilon.is_positive()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "charged epsilon must be positive, got ", epsilon.ToString()));
  }
  if (description.find_first_of("\t\n\r") != std::string::npos) {
    return absl::InvalidArgumentError(
        "ledger description must not contain tabs or newlines");
  }
  if (epsilon > remaining()) return ShortfallError(epsilon, remaining());
  LedgerEntry entry{now, std::move(description), epsilon};
  entries_.push_back(entry);
  spent_ = Epsilon::FromUnits(spent_.units() + epsilon.units());
  return entry;
}

std::string FormatJournalLine(const LedgerEntry& entry) {
  return absl::StrCat(
      absl::FormatTime(kTimeFormat, entry.timestamp, absl::UTCTimeZone()),
      "\t", entry.description, "\t", entry.charged.ToString());
}

absl::StatusOr<LedgerEntry> ParseJournalLine(absl::string_view line) {
  std::vector<absl::string_view> fields = absl::StrSplit(line, '\t');
  if (fields.size() != 3) {
    return absl::InvalidArgumentError(absl::StrCat(
        "journal line must have 3 tab-separated fields, got ", fields.size()));
  }
  LedgerEntry entry;
  std::string error;
  if (!absl::ParseTime(absl::RFC3339_full, fields[0], &entry.timestamp,
                       &error)) {
    return absl::InvalidArgumentError(
        absl::StrCat("journal timestamp '", fields[0], "': ", error));
  }
  entry.description = std::string(fields[1]);
  absl::StatusOr<Epsilon> charged = Epsilon::Parse(fields[2]);
  if (!charged.ok()) return charged.status();
  entry.charged = *charged;
  return entry;
}

absl::StatusOr<BudgetLedger> LoadJournal(const std::string& path,
                                         Epsilon budget) {
  absl::StatusOr<BudgetLedger> ledger = BudgetLedger::Create(budget);
  if (!ledger.ok()) return ledger.status();
  std::ifstream in(path);
  if (!in) {
    if (!std::filesystem::exists(path)) return ledger;
    return absl::NotFoundError(absl::StrCat("cannot read journal ", path));
  }
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    absl::StatusOr<LedgerEntry> entry = ParseJournalLine(line);
    if (!entry.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          path, ":", line_number, ": ", entry.status().message()));
    }
    absl::StatusOr<LedgerEntry> charged = ledger->Charge(
        std::move(entry->description), entry->charged, entry->timestamp);
    if (!charged.ok()) {
      return absl::FailedPreconditionError(absl::StrCat(
          path, ":", line_number, ": journal does not fit the budget: ",
          charged.status().message()));
    }
  }
  return ledger;
}

absl::Status AppendToJournal(const std::string& path,
                             const LedgerEntry& entry) {
  std::ofstream out(path, std::ios::app);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot open journal ", path, " for appending"));
  }
  out << FormatJournalLine(entry) << '\n';
  out.flush();
  if (!out) {
    return absl::DataLossError(absl::StrCat("failed writing journal ", path));
  }
  return absl::OkStatus();
}

}  // namespace broadband_dp
