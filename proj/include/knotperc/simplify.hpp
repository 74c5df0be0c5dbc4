#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "knotperc/diagram.hpp"

namespace knotperc {

class InvalidMove : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SimplifyConfig {
  double shake_probability = 0.5;
  int shake_rounds = 3;
  std::uint64_t rng_seed = 0;
};

struct SimplifyStats {
  std::size_t r1 = 0;
  std::size_t r2 = 0;
  std::size_t r3 = 0;
};

/// Faces are named by one of their half-edges: the face of u is the region in
/// the corner between u and sigma(u).

/// Half-edges u with phi(u) = u: the kinks removable by a type I move.
std::vector<int> find_monogons(const KnotCode& code);

/// Bigon faces whose two arcs each stay on one level (the reducible poke).
std::vector<int> find_reducible_bigons(const KnotCode& code);

/// Trigon faces at three distinct crossings with one strand over the other two.
std::vector<int> find_slidable_trigons(const KnotCode& code);

bool is_monogon(const KnotCode& code, int u);
bool is_reducible_bigon(const KnotCode& code, int u);
bool is_slidable_trigon(const KnotCode& code, int u);

/// Type I: removes the crossing of monogon `u`. Labels are compacted by moving
/// the last crossing into the freed slot.
void apply_r1(KnotCode& code, int u);

/// Type II: removes both crossings of the bigon `u`.
void apply_r2(KnotCode& code, int u);

/// Type III: slides a strand across the opposite crossing of trigon `u`. The
/// crossing set is unchanged; the new trigon sits at the opposite corners
/// sigma^2 of the old ones.
void apply_r3(KnotCode& code, int u);

/// Removes monogons and reducible bigons until none remain.
void reduce(KnotCode& code, SimplifyStats* stats = nullptr);

/// One scan over the half-edges flipping each slidable trigon with probability p.
void shake(KnotCode& code, std::mt19937_64& rng, double probability, SimplifyStats* stats = nullptr);

/// reduce, then shake_rounds times (shake, reduce).
void simplify(KnotCode& code, const SimplifyConfig& config, SimplifyStats* stats = nullptr);

}  // namespace knotperc
