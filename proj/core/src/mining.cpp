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

#include "depnet/mining.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <unordered_map>

namespace depnet {

namespace {

// FP-tree node. Children are keyed by item rank; the header chain threads
// nodes of equal rank together for conditional-base extraction.
struct FpNode {
  std::uint32_t item = 0;  // rank
  std::uint64_t count = 0;
  FpNode* parent = nullptr;
  FpNode* next_same_item = nullptr;
  std::map<std::uint32_t, std::unique_ptr<FpNode>> children;
};

struct FpTree {
  FpNode root;
  std::vector<FpNode*> header;  // first node per rank

  explicit FpTree(std::size_t item_count) : header(item_count, nullptr) {}

  void insert(std::span<const std::uint32_t> ranked_items, std::uint64_t count) {
    FpNode* node = &root;
    for (std::uint32_t item : ranked_items) {
      auto it = node->children.find(item);
      if (it == node->children.end()) {
        auto child = std::make_unique<FpNode>();
        child->item = item;
        child->parent = node;
        child->next_same_item = header[item];
        header[item] = child.get();
        it = node->children.emplace(item, std::move(child)).first;
      }
      it->second->count += count;
      node = it->second.get();
    }
  }
};

// Recursive FP-growth over the conditional tree for `suffix`.
void fp_grow(const FpTree& tree, std::uint64_t min_support,
             std::vector<std::uint32_t>& suffix,
             std::vector<std::pair<std::vector<std::uint32_t>, std::uint64_t>>& out) {
  for (std::uint32_t item = 0; item < tree.header.size(); ++item) {
    if (tree.header[item] == nullptr) continue;
    std::uint64_t support = 0;
    for (FpNode* n = tree.header[item]; n; n = n->next_same_item) support += n->count;
    if (support < min_support) continue;

    suffix.push_back(item);
    out.emplace_back(suffix, support);

    // Conditional pattern base: prefix paths above each occurrence.
    FpTree conditional(tree.header.size());
    std::vector<std::uint32_t> path;
    bool any = false;
    for (FpNode* n = tree.header[item]; n; n = n->next_same_item) {
      path.clear();
      for (FpNode* p = n->parent; p && p->parent; p = p->parent) path.push_back(p->item);
      if (path.empty()) continue;
      std::reverse(path.begin(), path.end());
      conditional.insert(path, n->count);
      any = true;
    }
    if (any) fp_grow(conditional, min_support, suffix, out);
    suffix.pop_back();
  }
}

std::uint64_t count_support(std::span<const Transaction> transactions,
                            const std::vector<std::string>& items) {
  std::uint64_t support = 0;
  for (const Transaction& t : transactions) {
    // both sides sorted
    if (std::includes(t.items.begin(), t.items.end(), items.begin(), items.end())) ++support;
  }
  return support;
}

struct VectorHash {
  std::size_t operator()(const std::vector<std::string>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const std::string& s : v) {
      h ^= std::hash<std::string>{}(s);
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

}  // namespace

TransactionSet extract_transactions(const DependencyGraph& graph,
                                    std::span<const EntityKind> item_kinds) {
  std::array<bool, kEntityKindCount> keep{};
  for (EntityKind k : item_kinds) keep[static_cast<std::size_t>(k)] = true;

  TransactionSet out;
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    if (graph.entity(v).kind != EntityKind::Fact) continue;
    std::vector<std::string> items;
    for (const auto& nb : graph.out_neighbors(v)) {
      if (!keep[static_cast<std::size_t>(graph.entity(nb.node).kind)]) continue;
      items.push_back(graph.id_of(nb.node));
    }
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    if (items.empty()) {
      ++out.facts_skipped;
      continue;
    }
    out.transactions.push_back(Transaction{graph.id_of(v), std::move(items)});
  }
  return out;
}

TransactionSet extract_transactions(const DependencyGraph& graph) {
  const std::array<EntityKind, 2> kinds{EntityKind::Fact, EntityKind::Constant};
  return extract_transactions(graph, kinds);
}

std::vector<FrequentItemset> frequent_itemsets(std::span<const Transaction> transactions,
                                               std::uint64_t min_support) {
  if (min_support < 1) throw Error(ErrorCode::InvalidParameter, "min_support must be >= 1");

  // Item frequencies; survivors ordered by descending frequency, ties by id.
  std::map<std::string, std::uint64_t> freq;
  for (const Transaction& t : transactions)
    for (const std::string& item : t.items) ++freq[item];

  std::vector<std::pair<std::string, std::uint64_t>> survivors;
  for (const auto& [item, count] : freq)
    if (count >= min_support) survivors.emplace_back(item, count);
  std::sort(survivors.begin(), survivors.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  std::unordered_map<std::string, std::uint32_t> rank_of;
  for (std::uint32_t r = 0; r < survivors.size(); ++r) rank_of.emplace(survivors[r].first, r);

  FpTree tree(survivors.size());
  std::vector<std::uint32_t> ranked;
  for (const Transaction& t : transactions) {
    ranked.clear();
    for (const std::string& item : t.items) {
      auto it = rank_of.find(item);
      if (it != rank_of.end()) ranked.push_back(it->second);
    }
    std::sort(ranked.begin(), ranked.end());
    if (!ranked.empty()) tree.insert(ranked, 1);
  }

  std::vector<std::pair<std::vector<std::uint32_t>, std::uint64_t>> mined;
  std::vector<std::uint32_t> suffix;
  fp_grow(tree, min_support, suffix, mined);

  std::vector<FrequentItemset> out;
  out.reserve(mined.size());
  for (auto& [ranks, support] : mined) {
    FrequentItemset set;
    set.support = support;
    set.items.reserve(ranks.size());
    for (std::uint32_t r : ranks) set.items.push_back(survivors[r].first);
    std::sort(set.items.begin(), set.items.end());
    out.push_back(std::move(set));
  }
  std::sort(out.begin(), out.end(), [](const FrequentItemset& a, const FrequentItemset& b) {
    if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
    return a.items < b.items;
  });
  return out;
}

std::vector<AssociationRule> association_rules(std::span<const FrequentItemset> itemsets,
                                               std::span<const Transaction> transactions,
                                               double min_confidence) {
  if (!(min_confidence > 0.0 && min_confidence <= 1.0))
    throw Error(ErrorCode::InvalidParameter, "min_confidence must be in (0, 1]");

  std::unordered_map<std::vector<std::string>, std::uint64_t, VectorHash> support_of;
  for (const FrequentItemset& set : itemsets) support_of.emplace(set.items, set.support);
  auto support_lookup = [&](const std::vector<std::string>& items) -> std::uint64_t {
    auto it = support_of.find(items);
    if (it != support_of.end()) return it->second;
    // Downward closure makes this unreachable for complete inputs; scan as a
    // fallback so partial itemset lists still work.
    return count_support(transactions, items);
  };

  std::vector<AssociationRule> rules;
  for (const FrequentItemset& set : itemsets) {
    const std::size_t size = set.items.size();
    if (size < 2) continue;
    // Every proper non-empty subset as antecedent.
    const std::uint32_t limit = 1u << size;
    std::vector<std::string> antecedent, consequent;
    for (std::uint32_t mask = 1; mask + 1 < limit; ++mask) {
      antecedent.clear();
      consequent.clear();
      for (std::size_t i = 0; i < size; ++i) {
        if (mask & (1u << i))
          antecedent.push_back(set.items[i]);
        else
          consequent.push_back(set.items[i]);
      }
      const std::uint64_t antecedent_support = support_lookup(antecedent);
      if (antecedent_support == 0) continue;
      const double confidence =
          static_cast<double>(set.support) / static_cast<double>(antecedent_support);
      if (confidence < min_confidence) continue;
      rules.push_back(AssociationRule{antecedent, consequent, set.support, confidence});
    }
  }
  std::sort(rules.begin(), rules.end(), [](const AssociationRule& a, const AssociationRule& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.support != b.support) return a.support > b.support;
    if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
    return a.consequent < b.consequent;
  });
  return rules;
}

std::vector<PremiseSuggestion> suggest_premises(std::span<const AssociationRule> rules,
                                                std::span<const std::string> partial_items,
                                                std::size_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidParameter, "k must be >= 1");
  std::vector<std::string> have(partial_items.begin(), partial_items.end());
  std::sort(have.begin(), have.end());

  std::map<std::string, PremiseSuggestion> best;
  for (const AssociationRule& rule : rules) {
    if (!std::includes(have.begin(), have.end(), rule.antecedent.begin(), rule.antecedent.end()))
      continue;
    for (const std::string& item : rule.consequent) {
      if (std::binary_search(have.begin(), have.end(), item)) continue;
      auto [it, inserted] = best.try_emplace(item, PremiseSuggestion{item, rule.confidence, rule.support});
      if (!inserted) {
        if (rule.confidence > it->second.confidence ||
            (rule.confidence == it->second.confidence && rule.support > it->second.support)) {
          it->second.confidence = rule.confidence;
          it->second.support = rule.support;
        }
      }
    }
  }

  std::vector<PremiseSuggestion> ranked;
  ranked.reserve(best.size());
  for (auto& [item, s] : best) ranked.push_back(s);
  std::sort(ranked.begin(), ranked.end(), [](const PremiseSuggestion& a, const PremiseSuggestion& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.support != b.support) return a.support > b.support;
    return a.item < b.item;
  });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

}  // namespace depnet
