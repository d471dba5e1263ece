#pragma once

#include <iosfwd>
#include <string>

#include "wgcpd/types.hpp"

namespace wgcpd {

enum class SequenceFormat { VectorCsv, GraphStack, FunctionCsv };

// Vector/function CSV: one observation per row, comma-separated reals, an
// optional header row skipped when its first cell is non-numeric.
// Graph stack: blocks separated by blank lines, each block m rows of m
// space-separated 0/1 entries.
Sequence read_sequence(const std::string& path, SequenceFormat format);
Sequence read_sequence(std::istream& in, SequenceFormat format,
                       const std::string& name = "<stream>");

void write_sequence(const Sequence& seq, const std::string& path);
void write_sequence(const Sequence& seq, std::ostream& out);

// Square CSV of reals.  Diagonal entries with |d_ii| <= 1e-12 are zeroed and
// off-diagonal asymmetry up to 1e-9 is repaired by averaging; anything
// beyond those tolerances is an error.
DistanceMatrix read_distance_matrix(const std::string& path);
DistanceMatrix read_distance_matrix(std::istream& in,
                                    const std::string& name = "<stream>");

void write_distance_matrix(const DistanceMatrix& d, const std::string& path);
void write_distance_matrix(const DistanceMatrix& d, std::ostream& out);

}  // namespace wgcpd
