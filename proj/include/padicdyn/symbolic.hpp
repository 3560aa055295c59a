#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "padicdyn/dynamics.hpp"

namespace padicdyn {

/// A finite itinerary over {1..alphabet_size}; the empty word is allowed.
struct Word {
  Word(int alphabet_size, std::vector<int> symbols);
  int alphabet_size;
  std::vector<int> symbols;

  bool operator==(const Word& other) const = default;
};

/// Drop-first-symbol shift.
Word shift(const Word& w);

/// 0/1 admissibility matrix with no all-zero row.
struct TransitionMatrix {
  explicit TransitionMatrix(std::vector<std::vector<int>> rows);
  int size;
  std::vector<std::vector<int>> rows;
};

struct CylinderDisk {
  Word word;
  PDisk disk;
};

/// The two branch disks D(x_i, p^{v_p(a)/2 - 1}) around the repelling fixed
/// points (FullShiftTwo regime only).
std::pair<PDisk, PDisk> shift_disks(const MapParams& params);

/// D(0, p^{-v_p(a)/2 - 1}), the common image of both branch disks.
PDisk fullshift_target_disk(const MapParams& params);

struct ItineraryResult {
  Word word;                      // symbols collected before any escape
  std::optional<int> escape_step; // first step outside the coding domain
};

/// Two-symbol itinerary over the branch disks.
ItineraryResult itinerary2(const MapParams& params, const ProjPoint& x, int n);

/// The unique x in branch disk `branch` (1 or 2) with phi(x) = y, for y in
/// the target disk; solves ax^2 - yx + 1 = 0 and selects by disk membership.
ProjPoint inverse_branch(const MapParams& params, const ProjPoint& y,
                         int branch);

/// Nested-disk cylinder of a word over {1,2}: composes inverse branches
/// right-to-left; radius exponent m + (|w|-1) * v_p(a).
CylinderDisk cylinder(const MapParams& params, const Word& w);

/// The point used to realize a word (the cylinder center).
ProjPoint point_realizing(const MapParams& params, const Word& w);

/// A point of exact period 2: a root of x^2 = -1/(1+a). Throws InvalidInput
/// when no such point exists in Q_p. In the FullShiftTwo regime branch 1/2
/// selects the root inside the corresponding branch disk (itinerary
/// (1,2,1,2,...) resp. (2,1,2,1,...)); otherwise branch 1 is the canonical
/// square-root branch and 2 its negative.
ProjPoint period2_point(const MapParams& params, int branch);

/// The four coding regions D1, D2, D3, D4 of the ChaoticSFT regime; D4 is
/// the complement-kind disk containing infinity. D1 and D2 are subsets of
/// D4's underlying set, so coding assigns the lowest-index containing region.
std::array<PDisk, 4> sft_regions(const MapParams& params);

/// Four-symbol itinerary over the coding regions (lowest index wins).
ItineraryResult itinerary4(const MapParams& params, const ProjPoint& x, int n);

/// The 4x4 transition matrix of the ChaoticSFT coding.
TransitionMatrix transition_matrix4();

/// True iff every adjacent symbol pair (s, t) has A[s][t] = 1.
bool is_admissible(const Word& w, const TransitionMatrix& A);

struct EntropyReport {
  double lambda;      // spectral radius
  double log_lambda;  // natural log
  int iterations;
  std::vector<std::uint64_t> word_counts;  // admissible words of length 1..L
};

/// Spectral radius by power iteration on the nonnegative matrix, with the
/// count of admissible words of lengths 1..count_lengths for growth-rate
/// cross-checks. Throws NonConvergence at the iteration cap.
EntropyReport entropy(const TransitionMatrix& A, double rel_tol = 1e-10,
                      int max_iterations = 100000, int count_lengths = 12);

}  // namespace padicdyn
