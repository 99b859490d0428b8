#include "baga/genome.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "baga/errors.hpp"

namespace baga {

const char* to_string(Fluorescence f) {
  switch (f) {
    case Fluorescence::None: return "None";
    case Fluorescence::Red: return "Red";
    case Fluorescence::Green: return "Green";
    case Fluorescence::Yellow: return "Yellow";
  }
  return "None";
}

bool SegmentedSchema::is_separator_position(std::size_t pos) const {
  if (pos < prefix.size()) return false;
  return (pos - prefix.size()) % (segment_length + 1) == 0;
}

Plasmid::Plasmid(std::vector<Symbol> symbols, Schema schema)
    : symbols_(std::move(symbols)), schema_(std::move(schema)) {
  if (const auto* bin = std::get_if<BinarySchema>(&schema_)) {
    if (symbols_.size() != bin->length)
      throw SchemaError(fmt::format("binary plasmid has {} symbols, schema length {}",
                                    symbols_.size(), bin->length));
    for (Symbol s : symbols_)
      if (s > 1) throw SchemaError("binary plasmid symbol outside {0,1}");
  } else {
    const auto& seg = std::get<SegmentedSchema>(schema_);
    if (symbols_.size() != seg.total_length())
      throw SchemaError(fmt::format("segmented plasmid has {} symbols, schema needs {}",
                                    symbols_.size(), seg.total_length()));
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i] > code(GeneCode::Null)) throw SchemaError("gene code outside 0..8");
      if (seg.is_separator_position(i) && symbols_[i] != seg.separator)
        throw SchemaError(fmt::format("separator position {} holds {}", i, symbols_[i]));
    }
  }
}

std::string Plasmid::to_string() const {
  std::string out;
  out.reserve(symbols_.size());
  for (Symbol s : symbols_) out.push_back(static_cast<char>('0' + s));
  return out;
}

Plasmid new_binary_plasmid(std::size_t length, InitPolicy init, Rng& rng) {
  if (length == 0) throw ParameterError("plasmid length must be >= 1");
  std::vector<Symbol> bits(length, 0);
  if (init == InitPolicy::RandomUniform)
    for (auto& b : bits) b = rng.bernoulli(0.5) ? 1 : 0;
  return Plasmid(std::move(bits), BinarySchema{length});
}

Plasmid binary_plasmid_from_string(const std::string& bits) {
  if (bits.empty()) throw ParameterError("plasmid length must be >= 1");
  std::vector<Symbol> symbols;
  symbols.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw SchemaError("binary genome must contain only 0 and 1");
    symbols.push_back(static_cast<Symbol>(c - '0'));
  }
  return Plasmid(std::move(symbols), BinarySchema{bits.size()});
}

std::uint64_t decode_unsigned(const Plasmid& p, std::size_t begin, std::size_t end) {
  if (!p.is_binary()) throw SchemaError("decode_unsigned needs a binary plasmid");
  if (begin > end || end > p.size() || end - begin > 64)
    throw ParameterError(fmt::format("bit range [{}, {}) invalid for length {}", begin, end, p.size()));
  std::uint64_t value = 0;
  for (std::size_t i = begin; i < end; ++i) value = (value << 1) | p[i];
  return value;
}

Plasmid encode_unsigned(std::uint64_t value, std::size_t bits) {
  if (bits == 0 || bits > 64) throw ParameterError("encode_unsigned needs 1..64 bits");
  std::vector<Symbol> symbols(bits);
  for (std::size_t i = 0; i < bits; ++i) symbols[bits - 1 - i] = (value >> i) & 1U;
  return Plasmid(std::move(symbols), BinarySchema{bits});
}

Plasmid flip_bit_mutation(const Plasmid& p, double p_m, Rng& rng) {
  if (!p.is_binary()) throw SchemaError("flip-bit mutation needs a binary plasmid");
  if (!(p_m >= 0.0 && p_m <= 1.0)) throw ParameterError("mutation probability outside [0,1]");
  std::vector<Symbol> bits = p.symbols();
  for (auto& b : bits)
    if (rng.uniform() < p_m) b ^= 1U;
  return Plasmid(std::move(bits), p.schema());
}

std::array<Symbol, 3> edge_symbols(Edge e) {
  switch (e) {
    case Edge::A: return {5, 1, 6};
    case Edge::B: return {7, 3, 8};
    case Edge::C: return {5, 3, 6};
  }
  return {8, 8, 8};
}

char edge_name(Edge e) { return static_cast<char>('A' + static_cast<int>(e)); }

SegmentedSchema hamiltonian_schema() {
  return SegmentedSchema{{code(GeneCode::Promoter), code(GeneCode::Rbs), code(GeneCode::Rfp5)},
                         3, 3, code(GeneCode::HixC)};
}

Plasmid new_hamiltonian_plasmid(const SegmentOrder& order) {
  auto schema = hamiltonian_schema();
  std::vector<Symbol> symbols = schema.prefix;
  for (Edge e : order) {
    symbols.push_back(schema.separator);
    for (Symbol s : edge_symbols(e)) symbols.push_back(s);
  }
  symbols.push_back(schema.separator);
  return Plasmid(std::move(symbols), std::move(schema));
}

Plasmid new_hamiltonian_plasmid(Rng& rng) {
  const auto orders = all_segment_orders();
  return new_hamiltonian_plasmid(orders[rng.below(orders.size())]);
}

std::vector<SegmentOrder> all_segment_orders() {
  SegmentOrder order{Edge::A, Edge::B, Edge::C};
  std::vector<SegmentOrder> out;
  do {
    out.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

std::vector<std::size_t> exchangeable_positions(const SegmentedSchema& schema) {
  std::vector<std::size_t> out;
  for (std::size_t i = schema.prefix.size(); i < schema.total_length(); ++i)
    if (!schema.is_separator_position(i)) out.push_back(i);
  return out;
}

namespace {

// Second locus, uniform over the n-1 loci other than `first`.
std::size_t other_locus(std::size_t first, std::size_t n, Rng& rng) {
  const auto pick = static_cast<std::size_t>(rng.below(n - 1));
  return pick >= first ? pick + 1 : pick;
}

}  // namespace

Plasmid hin_hix_recombinase(const Plasmid& p, const HixParams& params, Rng& rng) {
  const auto* seg = std::get_if<SegmentedSchema>(&p.schema());
  if (seg == nullptr) throw SchemaError("Hin-hixC recombinase needs a segmented plasmid");
  if (!(params.p_hix >= 0.0 && params.p_hix <= 1.0))
    throw ParameterError("p_hix outside [0,1]");
  if (!(params.p_accept >= 0.0 && params.p_accept <= 1.0))
    throw ParameterError("p_accept outside [0,1]");

  if (!(rng.uniform() < params.p_hix)) return p;

  std::vector<Symbol> symbols = p.symbols();
  if (params.mode == HixMode::Segment) {
    const std::size_t n = seg->segment_count;
    if (n == 0) return p;
    const auto x = static_cast<std::size_t>(rng.below(n));
    if (!(rng.uniform() < params.p_accept)) return p;
    const auto bx = symbols.begin() + static_cast<std::ptrdiff_t>(seg->segment_begin(x));
    const auto len = static_cast<std::ptrdiff_t>(seg->segment_length);
    if (params.invert_segments) {
      std::reverse(bx, bx + len);
    } else {
      if (n < 2) return p;
      const std::size_t y = other_locus(x, n, rng);
      const auto by = symbols.begin() + static_cast<std::ptrdiff_t>(seg->segment_begin(y));
      std::swap_ranges(bx, bx + len, by);
    }
  } else {
    const auto loci = exchangeable_positions(*seg);
    if (loci.size() < 2) return p;
    const auto x = static_cast<std::size_t>(rng.below(loci.size()));
    if (!(rng.uniform() < params.p_accept)) return p;
    const std::size_t y = other_locus(x, loci.size(), rng);
    std::swap(symbols[loci[x]], symbols[loci[y]]);
  }
  return Plasmid(std::move(symbols), p.schema());
}

Fluorescence detect_fluorescence(const Plasmid& p) {
  if (!p.is_segmented()) throw SchemaError("fluorescence readout needs a segmented plasmid");
  const auto& s = p.symbols();
  const auto start = std::find(s.begin(), s.end(), code(GeneCode::Promoter));
  if (start == s.end()) return Fluorescence::None;
  const auto stop = std::find(start, s.end(), code(GeneCode::Terminator));

  auto has_junction = [&](Symbol left, Symbol right) {
    for (auto it = start; std::distance(it, stop) >= 3; ++it)
      if (it[0] == left && it[1] == code(GeneCode::HixC) && it[2] == right) return true;
    return false;
  };
  const bool red = has_junction(code(GeneCode::Rfp5), code(GeneCode::Rfp3));
  const bool green = has_junction(code(GeneCode::Gfp5), code(GeneCode::Gfp3));
  if (red && green) return Fluorescence::Yellow;
  if (red) return Fluorescence::Red;
  if (green) return Fluorescence::Green;
  return Fluorescence::None;
}

}  // namespace baga
