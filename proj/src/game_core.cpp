#include "minegame/game_core.hpp"

#include <algorithm>

namespace minegame {

PureProfile::PureProfile(std::vector<std::uint8_t> choices) : choices_(std::move(choices)) {
  for (auto c : choices_) {
    if (c > 1) throw std::invalid_argument("pure choices must be 0 or 1");
  }
}

PureProfile::PureProfile(std::initializer_list<int> choices) {
  choices_.reserve(choices.size());
  for (int c : choices) {
    if (c != 0 && c != 1) throw std::invalid_argument("pure choices must be 0 or 1");
    choices_.push_back(static_cast<std::uint8_t>(c));
  }
}

PureProfile PureProfile::from_mask(std::uint64_t mask, std::size_t n) {
  if (n > 64) throw std::length_error("mask profiles support at most 64 miners");
  std::vector<std::uint8_t> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<std::uint8_t>((mask >> i) & 1U);
  return PureProfile(std::move(c));
}

PureProfile PureProfile::uniform(std::size_t n, bool participate) {
  return PureProfile(std::vector<std::uint8_t>(n, participate ? 1 : 0));
}

std::size_t PureProfile::participant_count() const {
  return static_cast<std::size_t>(std::count(choices_.begin(), choices_.end(), std::uint8_t{1}));
}

PureProfile PureProfile::flipped(std::size_t k) const {
  PureProfile copy = *this;
  copy.choices_.at(k) ^= 1U;
  return copy;
}

std::uint64_t PureProfile::mask() const {
  if (choices_.size() > 64) throw std::length_error("mask profiles support at most 64 miners");
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < choices_.size(); ++i) m |= std::uint64_t{choices_[i]} << i;
  return m;
}

std::string PureProfile::to_string() const {
  std::string out;
  out.reserve(choices_.size());
  for (auto c : choices_) out.push_back(c ? '1' : '0');
  return out;
}

}  // namespace minegame
