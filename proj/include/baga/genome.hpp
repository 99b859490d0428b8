#pragma once

// Plasmid encoding and the two variation operators (flip-bit mutation and
// the Hin-hixC recombinase), plus reporter-gene readout for segmented
// plasmids.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "baga/rng.hpp"

namespace baga {

using Symbol = std::uint8_t;

// Hin/hix plasmid code.
enum class GeneCode : Symbol {
  Promoter = 0,
  Rbs = 1,
  HixC = 2,
  Terminator = 3,
  Rfp5 = 4,
  Rfp3 = 5,
  Gfp5 = 6,
  Gfp3 = 7,
  Null = 8,
};

constexpr Symbol code(GeneCode c) { return static_cast<Symbol>(c); }

enum class Fluorescence { None, Red, Green, Yellow };

const char* to_string(Fluorescence f);

struct BinarySchema {
  std::size_t length = 0;
  bool operator==(const BinarySchema&) const = default;
};

// Layout: prefix, then `segment_count` times (separator, segment), then a
// closing separator. The Hamiltonian plasmid is
//   {0,1,4} # {2} # S1 # {2} # S2 # {2} # S3 # {2}
struct SegmentedSchema {
  std::vector<Symbol> prefix;
  std::size_t segment_count = 0;
  std::size_t segment_length = 0;
  Symbol separator = code(GeneCode::HixC);

  std::size_t total_length() const {
    return prefix.size() + segment_count * (segment_length + 1) + 1;
  }
  std::size_t segment_begin(std::size_t segment) const {
    return prefix.size() + 1 + segment * (segment_length + 1);
  }
  bool is_separator_position(std::size_t pos) const;
  bool operator==(const SegmentedSchema&) const = default;
};

using Schema = std::variant<BinarySchema, SegmentedSchema>;

class Plasmid {
 public:
  Plasmid(std::vector<Symbol> symbols, Schema schema);

  const std::vector<Symbol>& symbols() const { return symbols_; }
  const Schema& schema() const { return schema_; }
  std::size_t size() const { return symbols_.size(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }

  bool is_binary() const { return std::holds_alternative<BinarySchema>(schema_); }
  bool is_segmented() const { return std::holds_alternative<SegmentedSchema>(schema_); }

  // One character per symbol, e.g. "1011" or "0142516273825362".
  std::string to_string() const;

  bool operator==(const Plasmid&) const = default;

 private:
  std::vector<Symbol> symbols_;
  Schema schema_;
};

enum class InitPolicy { Zeros, RandomUniform };

Plasmid new_binary_plasmid(std::size_t length, InitPolicy init, Rng& rng);

// Parses a string of '0'/'1' characters into a binary plasmid.
Plasmid binary_plasmid_from_string(const std::string& bits);

// MSB-first value of bits [begin, end).
std::uint64_t decode_unsigned(const Plasmid& p, std::size_t begin, std::size_t end);

// Inverse of decode_unsigned for a whole plasmid of `bits` length.
Plasmid encode_unsigned(std::uint64_t value, std::size_t bits);

Plasmid flip_bit_mutation(const Plasmid& p, double p_m, Rng& rng);

// Graph edges of the three-node Hamiltonian instance.
enum class Edge : std::uint8_t { A = 0, B = 1, C = 2 };
using SegmentOrder = std::array<Edge, 3>;

std::array<Symbol, 3> edge_symbols(Edge e);
char edge_name(Edge e);

SegmentedSchema hamiltonian_schema();
Plasmid new_hamiltonian_plasmid(const SegmentOrder& order);
// Uniformly random segment order.
Plasmid new_hamiltonian_plasmid(Rng& rng);
// All 6 orders, lexicographic (A,B,C), (A,C,B), ...
std::vector<SegmentOrder> all_segment_orders();

enum class HixMode { Segment, Element };

struct HixParams {
  double p_hix = 0.3;
  double p_accept = 0.5;
  HixMode mode = HixMode::Segment;
  // Segment mode only: reverse the chosen segment instead of swapping two.
  bool invert_segments = false;
};

Plasmid hin_hix_recombinase(const Plasmid& p, const HixParams& params, Rng& rng);

// Positions the element-mode recombinase may exchange.
std::vector<std::size_t> exchangeable_positions(const SegmentedSchema& schema);

Fluorescence detect_fluorescence(const Plasmid& p);

}  // namespace baga
