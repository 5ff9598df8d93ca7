#include "vrcap/vocab.hpp"

#include <cctype>

#include "vrcap/names.hpp"

namespace vrcap {

std::vector<std::string> VocabConfig::default_words() {
  return {"a",       "the",      "of",     "in",      "is",   "this",
          "image",   "photo",    "picture", "caption", "describe",
          "detail",  "box",      "bounding", "present", "with"};
}

std::vector<std::string> default_name_pool(int count) {
  const auto list = name_wordlist();
  if (count < 0 || static_cast<std::size_t>(count) > list.size())
    throw ConfigError("name pool larger than bundled wordlist");
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.emplace_back(list[static_cast<std::size_t>(i)]);
  return out;
}

Vocabulary::Vocabulary(VocabConfig config) : config_(std::move(config)) {
  if (config_.coord_cap < 1) throw ConfigError("vocab: coord_cap must be >= 1");
  surfaces_ = {"<eos>", "<unk>", "yes", "no", "[", "]", ","};
  coord_begin_ = static_cast<TokenId>(surfaces_.size());
  for (int c = 0; c <= config_.coord_cap; ++c)
    surfaces_.push_back(std::to_string(c));
  word_begin_ = static_cast<TokenId>(surfaces_.size());
  for (const auto& w : config_.words) surfaces_.push_back(w);
  name_begin_ = static_cast<TokenId>(surfaces_.size());
  for (const auto& n : config_.names) surfaces_.push_back(n);

  for (std::size_t i = 0; i < surfaces_.size(); ++i) {
    const auto key = to_lower(surfaces_[i]);
    if (!index_.emplace(key, static_cast<TokenId>(i)).second)
      throw ConfigError("vocab: duplicate token '" + surfaces_[i] + "'");
  }
}

TokenId Vocabulary::lookup(std::string_view word) const {
  const auto it = index_.find(to_lower(word));
  return it == index_.end() ? kUnk : it->second;
}

const std::string& Vocabulary::surface(TokenId t) const {
  if (t < 0 || static_cast<std::size_t>(t) >= surfaces_.size())
    throw ContractError("vocab: token id out of range");
  return surfaces_[static_cast<std::size_t>(t)];
}

std::vector<TokenId> Vocabulary::encode(std::string_view text) const {
  std::vector<TokenId> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(lookup(cur));
    cur.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '[') {
      flush();
      out.push_back(lbracket());
    } else if (c == ']') {
      flush();
      out.push_back(rbracket());
    } else if (c == ',') {
      flush();
      out.push_back(comma());
    } else if (c == '(' || c == ')' || c == '.' || c == '?' || c == '!' ||
               c == ':' || c == ';' || c == '\'') {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

TokenSequence Vocabulary::encode_terminated(std::string_view text) const {
  TokenSequence seq{encode(text)};
  seq.tokens.push_back(kEos);
  return seq;
}

std::string Vocabulary::decode(const TokenSequence& seq) const {
  std::string out;
  for (TokenId t : seq.tokens) {
    if (!out.empty()) out.push_back(' ');
    out += surface(t);
  }
  return out;
}

std::vector<std::string> Vocabulary::words_of(const TokenSequence& seq) const {
  std::vector<std::string> out;
  out.reserve(seq.content_length());
  for (TokenId t : seq.content()) out.push_back(surface(t));
  return out;
}

TokenId Vocabulary::coord_token(int value) const {
  if (value < 0 || value > config_.coord_cap)
    throw ContractError("vocab: coordinate out of range");
  return coord_begin_ + value;
}

int Vocabulary::name_slot(std::string_view name) const {
  const TokenId t = lookup(name);
  return is_name(t) ? t - name_begin_ : -1;
}

std::uint64_t Vocabulary::hash() const {
  std::uint64_t h = fnv1a64("vrcap-vocab");
  for (const auto& s : surfaces_) {
    h = fnv1a64(s, h);
    h = fnv1a64(std::string_view("\x1f", 1), h);
  }
  return h;
}

}  // namespace vrcap
