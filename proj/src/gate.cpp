#include "gpmap/gate.hpp"

#include "gpmap/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace gpmap {

namespace {

constexpr std::array<std::string_view, kGateCount> kNames{"AND", "OR", "NAND", "NOR", "XOR"};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) == std::toupper(static_cast<unsigned char>(y));
         });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<Gate> gate_from_lgp_index(int index) noexcept {
  if (index < 1 || index > kGateCount) return std::nullopt;
  return static_cast<Gate>(index - 1);
}

std::string_view gate_name(Gate g) noexcept { return kNames[static_cast<std::size_t>(g)]; }

std::optional<Gate> gate_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (iequals(name, kNames[i])) return static_cast<Gate>(i);
  }
  return std::nullopt;
}

GateSet::GateSet(std::initializer_list<Gate> gates) : GateSet(std::vector<Gate>(gates)) {}

GateSet::GateSet(std::vector<Gate> gates) : gates_(std::move(gates)) {
  if (gates_.empty()) throw ValidationError("gate set must not be empty");
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    for (std::size_t j = i + 1; j < gates_.size(); ++j) {
      if (gates_[i] == gates_[j]) throw ValidationError("gate set contains duplicate " + std::string(gate_name(gates_[i])));
    }
  }
}

GateSet GateSet::full() { return {Gate::And, Gate::Or, Gate::Nand, Gate::Nor, Gate::Xor}; }

GateSet GateSet::no_xor() { return {Gate::And, Gate::Or, Gate::Nand, Gate::Nor}; }

GateSet GateSet::parse(std::string_view text) {
  text = trim(text);
  if (iequals(text, "full")) return full();
  if (iequals(text, "no-xor") || iequals(text, "no_xor") || iequals(text, "noxor")) return no_xor();
  std::vector<Gate> gates;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto token = trim(text.substr(0, comma));
    const auto g = gate_from_name(token);
    if (!g) throw ValidationError("unknown gate '" + std::string(token) + "'");
    gates.push_back(*g);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return GateSet(std::move(gates));
}

bool GateSet::contains(Gate g) const noexcept { return std::find(gates_.begin(), gates_.end(), g) != gates_.end(); }

std::string GateSet::to_string() const {
  if (*this == full()) return "full";
  if (*this == no_xor()) return "no-xor";
  std::string out;
  for (const Gate g : gates_) {
    if (!out.empty()) out += ',';
    out += gate_name(g);
  }
  return out;
}

}  // namespace gpmap
