// Copyright 2026 The depnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DEPNET_MINING_HPP
#define DEPNET_MINING_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "depnet/graph.hpp"

namespace depnet {

/// One fact's direct premise set: the out-neighbors it draws on.
struct Transaction {
  std::string owner;               // the fact
  std::vector<std::string> items;  // sorted, deduplicated; never contains owner

  friend bool operator==(const Transaction&, const Transaction&) = default;
};

struct TransactionSet {
  std::vector<Transaction> transactions;
  std::size_t facts_skipped = 0;  // facts with no qualifying dependency
};

/// One transaction per Fact node with at least one out-neighbor of the
/// selected kinds. Facts with none are skipped and counted.
TransactionSet extract_transactions(const DependencyGraph& graph,
                                    std::span<const EntityKind> item_kinds);

/// Default item kinds: {Fact, Constant}.
TransactionSet extract_transactions(const DependencyGraph& graph);

struct FrequentItemset {
  std::vector<std::string> items;  // sorted lexicographically
  std::uint64_t support = 0;       // exact count of containing transactions

  friend bool operator==(const FrequentItemset&, const FrequentItemset&) = default;
};

/// FP-growth over the transactions: exactly the itemsets with support >=
/// min_support, each with its exact support, sorted by (size, items).
/// Throws InvalidParameter when min_support < 1.
std::vector<FrequentItemset> frequent_itemsets(std::span<const Transaction> transactions,
                                               std::uint64_t min_support);

struct AssociationRule {
  std::vector<std::string> antecedent;  // sorted, non-empty
  std::vector<std::string> consequent;  // sorted, non-empty, disjoint from antecedent
  std::uint64_t support = 0;            // support of antecedent union consequent
  double confidence = 0.0;              // support(union) / support(antecedent)

  friend bool operator==(const AssociationRule&, const AssociationRule&) = default;
};

/// Every rule X -> Y with X union Y frequent and confidence >= min_confidence,
/// sorted by descending confidence, then descending support, then items.
/// `transactions` backs support lookups for antecedents missing from the
/// itemset list. Throws InvalidParameter for min_confidence outside (0, 1].
std::vector<AssociationRule> association_rules(std::span<const FrequentItemset> itemsets,
                                               std::span<const Transaction> transactions,
                                               double min_confidence);

struct PremiseSuggestion {
  std::string item;
  double confidence = 0.0;
  std::uint64_t support = 0;
};

/// Applies rules whose antecedent is contained in partial_items; each
/// consequent item scores its best rule confidence. Top k by (confidence,
/// support, item id), never suggesting items already present. Throws
/// InvalidParameter when k < 1.
std::vector<PremiseSuggestion> suggest_premises(std::span<const AssociationRule> rules,
                                                std::span<const std::string> partial_items,
                                                std::size_t k);

}  // namespace depnet

#endif  // DEPNET_MINING_HPP
