#include "projsum/element_spec.hpp"

#include <cctype>
#include <charconv>
#include <string>

namespace projsum {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }
  bool peek(char c) {
    skip_ws();
    return i_ < s_.size() && s_[i_] == c;
  }
  void expect(char c) {
    if (!peek(c)) throw ParseError(std::string("expected '") + c + "'", i_);
    ++i_;
  }
  std::size_t pos() const { return i_; }

  // Up to (not including) any of the stop characters.
  std::string_view token(std::string_view stops) {
    skip_ws();
    const std::size_t start = i_;
    while (i_ < s_.size() && stops.find(s_[i_]) == std::string_view::npos) ++i_;
    std::string_view t = s_.substr(start, i_ - start);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
    return t;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

BigRational parse_coeff(std::string_view t, std::size_t at) {
  if (t.empty()) throw ParseError("expected coefficient", at);
  try {
    return BigRational::parse(t);
  } catch (const ParseError& e) {
    throw ParseError("bad coefficient '" + std::string(t) + "': " + e.what(), at + e.position());
  }
}

std::int64_t parse_residue(std::string_view t, std::size_t at) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ParseError("bad class residue '" + std::string(t) + "'", at);
  return v;
}

}  // namespace

SpectralElement parse_element(const KGroup& group, std::string_view text) {
  SpectralElement out{group, {}};
  Cursor c(text);
  if (c.done()) throw ParseError("empty element", 0);
  while (true) {
    c.skip_ws();
    const std::size_t at = c.pos();
    const BigRational coeff = parse_coeff(c.token(":;"), at);
    if (coeff.sign() < 0) throw ParseError("negative coefficient", at);
    std::vector<std::int64_t> residues;
    bool has_class = false;
    if (c.peek(':')) {
      has_class = true;
      c.expect(':');
      c.expect('(');
      if (!c.peek(')')) {
        while (true) {
          c.skip_ws();
          const std::size_t rat = c.pos();
          residues.push_back(parse_residue(c.token(",)"), rat));
          if (c.peek(',')) {
            c.expect(',');
            continue;
          }
          break;
        }
      }
      c.expect(')');
    } else if (group.order() != 1) {
      throw ParseError("expected ':' and a class", c.pos());
    }
    if (has_class && residues.size() != group.rank())
      throw ParseError("class has " + std::to_string(residues.size()) + " residues, group " + group.to_string() +
                           " needs " + std::to_string(group.rank()),
                       at);
    out.blocks.push_back({Coefficient(coeff), has_class ? group.element(residues) : group.zero()});
    if (c.done()) break;
    c.expect(';');
    if (c.done()) break;
  }
  return out;
}

SpectralElement parse_element(std::string_view group_spec, std::string_view text) {
  return parse_element(KGroup::parse(group_spec), text);
}

}  // namespace projsum
