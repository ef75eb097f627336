#pragma once

#include "ifskit/cloud.hpp"

namespace ifskit {

struct DirectedResult {
  double distance = 0.0;  // max over a in A of min over b in B of dist(a,b)
  Point witness;          // point of A attaining the max; lexicographic tie-break
};

struct HausdorffResult {
  double distance = 0.0;
  Point witness_a;  // witness of the A -> B direction
  Point witness_b;  // witness of the B -> A direction
  double directed_ab = 0.0;
  double directed_ba = 0.0;
};

// Exact directed Hausdorff distance by full O(|A| |B|) scan. This is the
// oracle path: no pruning, every min is computed in full.
DirectedResult directed_hausdorff(const PointCloud& a, const PointCloud& b);

// Symmetric Hausdorff distance via two brute-force directed scans.
HausdorffResult hausdorff(const PointCloud& a, const PointCloud& b);

// Bucket-grid implementation with expanding ring scan and early exit against
// the running max. Bit-identical to hausdorff() on every input, including
// witnesses: all distance comparisons use the same squared-distance
// expression and the same lexicographic tie-break. `cell` <= 0 picks the
// size automatically; the value is a performance hint only and never
// changes the result.
HausdorffResult hausdorff_accelerated(const PointCloud& a, const PointCloud& b,
                                      double cell = 0.0);

}  // namespace ifskit
