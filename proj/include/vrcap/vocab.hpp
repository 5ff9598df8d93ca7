#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vrcap/core.hpp"

namespace vrcap {

struct VocabConfig {
  // Coordinate tokens "0".."coord_cap" (grid lines, so cap = max(W, H)).
  int coord_cap = 8;
  // Plain words shared by instructions and captions.
  std::vector<std::string> words = default_words();
  // Name tokens; policies can only emit names listed here.
  std::vector<std::string> names;

  static std::vector<std::string> default_words();
};

/// Name pool of `count` entries from the bundled wordlist.
std::vector<std::string> default_name_pool(int count);

/// Token vocabulary of the toy policy. Layout, in order:
///   <eos> <unk> yes no [ ] , coords words names
/// Lookup is case-insensitive; unknown words map to <unk>.
class Vocabulary {
 public:
  explicit Vocabulary(VocabConfig config);

  [[nodiscard]] std::size_t size() const { return surfaces_.size(); }
  [[nodiscard]] const VocabConfig& config() const { return config_; }

  [[nodiscard]] TokenId lookup(std::string_view word) const;
  [[nodiscard]] const std::string& surface(TokenId t) const;

  /// Splits on whitespace and on the punctuation "[](),.?!:;'" (brackets and
  /// commas become tokens, the rest is dropped). No end token is appended.
  [[nodiscard]] std::vector<TokenId> encode(std::string_view text) const;
  [[nodiscard]] TokenSequence encode_terminated(std::string_view text) const;
  [[nodiscard]] std::string decode(const TokenSequence& seq) const;
  /// Surface words of the content (end token excluded).
  [[nodiscard]] std::vector<std::string> words_of(const TokenSequence& seq) const;

  [[nodiscard]] TokenId yes() const { return 2; }
  [[nodiscard]] TokenId no() const { return 3; }
  [[nodiscard]] TokenId lbracket() const { return 4; }
  [[nodiscard]] TokenId rbracket() const { return 5; }
  [[nodiscard]] TokenId comma() const { return 6; }

  [[nodiscard]] int coord_cap() const { return config_.coord_cap; }
  [[nodiscard]] TokenId coord_token(int value) const;
  [[nodiscard]] bool is_coord(TokenId t) const {
    return t >= coord_begin_ && t < coord_begin_ + config_.coord_cap + 1;
  }
  [[nodiscard]] int coord_value(TokenId t) const { return t - coord_begin_; }

  [[nodiscard]] TokenId word_begin() const { return word_begin_; }
  [[nodiscard]] std::size_t word_count() const { return config_.words.size(); }
  [[nodiscard]] bool is_word(TokenId t) const {
    return t >= word_begin_ &&
           t < word_begin_ + static_cast<TokenId>(config_.words.size());
  }

  [[nodiscard]] TokenId name_begin() const { return name_begin_; }
  [[nodiscard]] std::size_t name_count() const { return config_.names.size(); }
  [[nodiscard]] bool is_name(TokenId t) const {
    return t >= name_begin_ &&
           t < name_begin_ + static_cast<TokenId>(config_.names.size());
  }
  /// Index into the name block, or -1 when `name` is not a name token.
  [[nodiscard]] int name_slot(std::string_view name) const;

  /// Fingerprint of the token surfaces; stored in checkpoints.
  [[nodiscard]] std::uint64_t hash() const;

 private:
  VocabConfig config_;
  std::vector<std::string> surfaces_;
  std::unordered_map<std::string, TokenId> index_;
  TokenId coord_begin_ = 0;
  TokenId word_begin_ = 0;
  TokenId name_begin_ = 0;
};

}  // namespace vrcap
