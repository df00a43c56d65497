#include "gpmap/text_format.hpp"

#include "gpmap/error.hpp"

#include <cctype>
#include <charconv>

namespace gpmap {

namespace {

class Cursor {
public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t position() {
    skip_space();
    return pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ == text_.size();
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      const std::string found = pos_ < text_.size() ? std::string("'") + text_[pos_] + "'" : "end of input";
      throw ParseError(std::string("expected '") + c + "' but found " + found, pos_);
    }
  }

  int integer() {
    skip_space();
    int value = 0;
    const auto* begin = text_.data() + pos_;
    const auto* end = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) throw ParseError("expected integer", pos_);
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  std::string_view identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (pos_ == start) throw ParseError("expected identifier", pos_);
    return text_.substr(start, pos_ - start);
  }

  bool accept_word(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }

private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

CgpGenotype parse_cgp(std::string_view text, std::optional<int> levels_back) {
  Cursor in(text);
  in.accept_word("circuit");
  in.expect('(');

  in.expect('(');
  CgpGenotype g;
  int inputs = 0;
  do {
    const auto at = in.position();
    const int index = in.integer();
    if (index != inputs + 1) {
      throw ParseError("input nodes must be numbered 1..n in order, got " + std::to_string(index), at);
    }
    ++inputs;
  } while (in.accept(','));
  in.expect(')');
  g.n_inputs = inputs;
  if (inputs > kMaxInputs) throw ValidationError("at most " + std::to_string(kMaxInputs) + " inputs are supported");

  in.expect(',');
  in.expect('(');
  do {
    in.expect('(');
    const auto at = in.position();
    const int number = in.integer();
    const int want = inputs + static_cast<int>(g.nodes.size()) + 1;
    if (number != want) {
      throw ParseError("gate number " + std::to_string(number) + " out of sequence, expected " + std::to_string(want), at);
    }
    in.expect(',');
    const auto name_at = in.position();
    const auto name = in.identifier();
    const auto fn = gate_from_name(name);
    if (!fn) throw ParseError("unknown gate '" + std::string(name) + "'", name_at);
    in.expect(',');
    const int in1 = in.integer();
    in.expect(',');
    const int in2 = in.integer();
    in.expect(')');
    g.nodes.push_back({*fn, in1, in2});
  } while (in.accept(','));
  in.expect(')');
  in.expect(')');
  if (!in.at_end()) throw ParseError("trailing characters", in.position());

  g.levels_back = levels_back.value_or(static_cast<int>(g.nodes.size()));
  validate(g, GateSet::full());
  return g;
}

LgpGenotype parse_lgp(std::string_view text, int n_inputs, int n_calc_registers) {
  if (n_inputs < 1 || n_inputs > kMaxInputs) throw ValidationError("LGP parsing needs an input count in 1..7");
  Cursor in(text);
  LgpGenotype g;
  g.n_inputs = n_inputs;
  g.n_calc_registers = n_calc_registers;
  in.expect('[');
  if (!in.accept(']')) {
    do {
      in.expect('(');
      const auto at = in.position();
      const int index = in.integer();
      const auto fn = gate_from_lgp_index(index);
      if (!fn) throw ParseError("gate function index " + std::to_string(index) + " outside 1..5", at);
      in.expect(',');
      const int out = in.integer();
      in.expect(',');
      const int in1 = in.integer();
      in.expect(',');
      const int in2 = in.integer();
      in.expect(')');
      g.instructions.push_back({*fn, out, in1, in2});
    } while (in.accept(','));
    in.expect(']');
  }
  if (!in.at_end()) throw ParseError("trailing characters", in.position());
  validate(g, GateSet::full());
  return g;
}

Genotype parse_circuit(std::string_view text, Representation repr, const ParseOptions& options) {
  if (repr == Representation::Cgp) return parse_cgp(text, options.levels_back);
  if (!options.n_inputs) throw ValidationError("LGP text needs an explicit input count");
  return parse_lgp(text, *options.n_inputs, options.n_calc_registers);
}

std::string format_circuit(const CgpGenotype& g) {
  std::string out = "circuit((";
  for (int i = 1; i <= g.n_inputs; ++i) {
    if (i > 1) out += ',';
    out += std::to_string(i);
  }
  out += "), (";
  for (std::size_t p = 0; p < g.nodes.size(); ++p) {
    const auto& node = g.nodes[p];
    if (p > 0) out += ", ";
    out += '(' + std::to_string(g.n_inputs + static_cast<int>(p) + 1) + ',' + std::string(gate_name(node.function)) + ',' +
           std::to_string(node.in1) + ',' + std::to_string(node.in2) + ')';
  }
  out += "))";
  return out;
}

std::string format_circuit(const LgpGenotype& g) {
  std::string out = "[";
  for (std::size_t p = 0; p < g.instructions.size(); ++p) {
    const auto& ins = g.instructions[p];
    if (p > 0) out += ", ";
    out += '(' + std::to_string(lgp_index(ins.function)) + ", " + std::to_string(ins.out) + ", " +
           std::to_string(ins.in1) + ", " + std::to_string(ins.in2) + ')';
  }
  out += ']';
  return out;
}

std::string format_circuit(const Genotype& g) {
  return std::visit([](const auto& x) { return format_circuit(x); }, g);
}

}  // namespace gpmap
