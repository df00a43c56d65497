#include "gpmap/phenotype.hpp"

#include "gpmap/error.hpp"

#include <cctype>

namespace gpmap {

namespace {

void check_inputs(int n_inputs) {
  if (n_inputs < 1 || n_inputs > kMaxInputs) {
    throw ValidationError("input count " + std::to_string(n_inputs) + " outside 1.." + std::to_string(kMaxInputs));
  }
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

}  // namespace

Phenotype::Phenotype(int n_inputs, const BitRow& bits) : n_inputs_(n_inputs) {
  check_inputs(n_inputs);
  bits_ = bits & column_mask(n_inputs);
}

Phenotype Phenotype::from_value(int n_inputs, std::uint64_t value) {
  check_inputs(n_inputs);
  if (n_inputs > 6) throw ValidationError("from_value supports at most 6 inputs");
  const BitRow bits{{value, 0}};
  if ((bits & column_mask(n_inputs)) != bits) throw ValidationError("phenotype value wider than 2^n bits");
  return Phenotype(n_inputs, bits);
}

Phenotype Phenotype::from_hex(std::string_view text, int n_inputs) {
  check_inputs(n_inputs);
  if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) text.remove_prefix(2);
  if (text.empty()) throw ValidationError("empty phenotype");
  BitRow bits;
  std::size_t bit = 0;
  for (auto it = text.rbegin(); it != text.rend(); ++it, bit += 4) {
    const int d = hex_digit(*it);
    if (d < 0) throw ValidationError("invalid hex digit in phenotype '" + std::string(text) + "'");
    for (int b = 0; b < 4; ++b) {
      if (!((d >> b) & 1)) continue;
      if (bit + b >= 128) throw ValidationError("phenotype '" + std::string(text) + "' too wide");
      bits.set(bit + b);
    }
  }
  if ((bits & column_mask(n_inputs)) != bits) {
    throw ValidationError("phenotype 0x" + std::string(text) + " does not fit in " +
                          std::to_string(std::size_t{1} << n_inputs) + " bits");
  }
  return Phenotype(n_inputs, bits);
}

Phenotype Phenotype::constant(int n_inputs, bool value) {
  check_inputs(n_inputs);
  return Phenotype(n_inputs, value ? column_mask(n_inputs) : BitRow{});
}

std::string Phenotype::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = bit_count() < 4 ? 1 : bit_count() / 4;
  std::string out = "0x";
  out.reserve(2 + digits);
  for (std::size_t d = digits; d-- > 0;) {
    const std::size_t base = d * 4;
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      if (base + b < 128 && bits_.test(base + b)) v |= 1 << b;
    }
    out += kDigits[v];
  }
  return out;
}

std::uint64_t phenotype_count(int n_inputs) {
  if (n_inputs < 1 || n_inputs > 5) throw ValidationError("phenotype_count supports 1..5 inputs");
  return std::uint64_t{1} << (std::size_t{1} << n_inputs);
}

}  // namespace gpmap
