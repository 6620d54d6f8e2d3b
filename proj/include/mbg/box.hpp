#pragma once

#include <vector>

#include "mbg/family.hpp"

namespace mbg {

/// r <= (a-1) H_{k-1} against a bias-1 opponent, r <= ((a-1)/2) H_{k-1}
/// against bias 2.
bool box_game_condition(int r, int k, int a, int opponent_bias);

double harmonic(int m);

enum class BoxPolicy {
  /// Attack the surviving box with the fewest unclaimed positions.
  SmallestFirst,
  /// Finish a box when the turn allows it, otherwise claim in the surviving
  /// box with the most unclaimed positions (keeps Maker's shares level).
  FinishOrBalance,
};

/// Picks `count` positions in pairwise disjoint boxes. `owner(p)` gives
/// current ownership; `me` is the box-claiming side.
template <class OwnerFn>
std::vector<Position> box_select(const std::vector<std::vector<Position>>& boxes, OwnerFn owner, Owner me,
                                 std::size_t count, BoxPolicy policy);

/// Box Maker on a family game (sets must be pairwise disjoint).
std::vector<Position> box_maker_select(const FamilyGameState& state, BoxPolicy policy = BoxPolicy::SmallestFirst);

class BoxMaker : public Cloneable<BoxMaker, FamilyStrategy> {
 public:
  explicit BoxMaker(BoxPolicy policy = BoxPolicy::SmallestFirst) : policy_(policy) {}
  std::string id() const override {
    return policy_ == BoxPolicy::SmallestFirst ? "box-maker" : "box-maker-balance";
  }
  std::vector<Position> select(const FamilyGameState& state) override;

 private:
  BoxPolicy policy_;
};

// implementation

template <class OwnerFn>
std::vector<Position> box_select(const std::vector<std::vector<Position>>& boxes, OwnerFn owner, Owner me,
                                 std::size_t count, BoxPolicy policy) {
  const std::size_t k = boxes.size();
  std::vector<std::size_t> left(k, 0);
  std::vector<bool> alive(k, true);
  std::vector<std::size_t> cursor(k, 0);
  std::vector<std::vector<Position>> open(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (Position p : boxes[i]) {
      const Owner o = owner(p);
      if (o == Owner::Unclaimed) {
        open[i].push_back(p);
      } else if (o != me) {
        alive[i] = false;
      }
    }
    left[i] = open[i].size();
  }
  auto pick_box = [&](std::size_t budget) {
    std::size_t best = k;
    for (std::size_t i = 0; i < k; ++i) {
      if (!alive[i] || left[i] == 0) continue;
      if (best == k) {
        best = i;
        continue;
      }
      if (policy == BoxPolicy::SmallestFirst) {
        if (left[i] < left[best]) best = i;
      } else {
        const bool fi = left[i] <= budget, fb = left[best] <= budget;
        if (fi != fb) {
          if (fi) best = i;
        } else if (fi ? left[i] < left[best] : left[i] > left[best]) {
          best = i;
        }
      }
    }
    return best;
  };
  std::vector<Position> out;
  while (out.size() < count) {
    const std::size_t i = pick_box(count - out.size());
    if (i == k) break;
    out.push_back(open[i][cursor[i]++]);
    --left[i];
  }
  return out;
}

}  // namespace mbg
