#include "maskkit/cli/manifest.hpp"

#include <algorithm>
#include <cstdio>

#include "maskkit/error.hpp"

namespace maskkit::cli {

namespace {

bool needs_escape(unsigned char c) { return c <= 0x20 || c >= 0x7f || c == '%'; }

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

std::vector<std::string_view> split_spaces(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ') ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string escape_value(std::string_view raw) {
  std::string out;
  for (char ch : raw) {
    const auto c = static_cast<unsigned char>(ch);
    if (needs_escape(c)) {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", c);
      out += buf;
    } else {
      out += ch;
    }
  }
  return out;
}

std::string unescape_value(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '%') {
      out += text[i];
      continue;
    }
    if (i + 2 >= text.size()) {
      throw Error(Errc::parse_error, "truncated escape in manifest value");
    }
    const int hi = hex_digit(text[i + 1]);
    const int lo = hex_digit(text[i + 2]);
    if (hi < 0 || lo < 0) throw Error(Errc::parse_error, "bad escape in manifest value");
    out += static_cast<char>(hi * 16 + lo);
    i += 2;
  }
  return out;
}

Manifest::Manifest(std::string command) : command_(std::move(command)) {}

void Manifest::set(const std::string& key, std::string value) {
  auto it = std::find_if(params_.begin(), params_.end(), [&](const auto& kv) { return kv.first == key; });
  if (it != params_.end()) {
    it->second = std::move(value);
  } else {
    params_.emplace_back(key, std::move(value));
  }
}

void Manifest::set_tokens(std::string_view text) {
  for (auto token : split_spaces(text)) {
    const auto eq = token.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(Errc::parse_error, "expected key=value, got '" + std::string(token) + "'");
    }
    set(std::string(token.substr(0, eq)), std::string(token.substr(eq + 1)));
  }
}

std::optional<std::string> Manifest::get(std::string_view key) const {
  for (const auto& [k, v] : params_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string Manifest::line() const {
  std::string out(kManifestTag);
  out += " command=" + escape_value(command_);
  for (const auto& [k, v] : params_) out += " " + k + "=" + escape_value(v);
  return out;
}

std::optional<Manifest> Manifest::parse(std::string_view line) {
  auto tokens = split_spaces(line);
  if (tokens.size() < 2 || tokens[0] != kManifestTag) return std::nullopt;
  if (tokens[1].substr(0, 8) != "command=") return std::nullopt;
  Manifest m(unescape_value(tokens[1].substr(8)));
  for (std::size_t i = 2; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(Errc::parse_error, "bad manifest token '" + std::string(tokens[i]) + "'");
    }
    m.set(std::string(tokens[i].substr(0, eq)), unescape_value(tokens[i].substr(eq + 1)));
  }
  return m;
}

std::optional<Manifest> Manifest::find(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.size() > 2 && line[0] == '#') {
      line.remove_prefix(1);
      while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
      if (auto m = parse(line)) return m;
    }
    pos = end + 1;
  }
  return std::nullopt;
}

std::vector<std::string> Manifest::to_args() const {
  std::vector<std::string> args;
  std::size_t start = 0;
  while (true) {
    const auto dot = command_.find('.', start);
    args.push_back(command_.substr(start, dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  for (const auto& [k, v] : params_) {
    if (k == "version" || k == "rng") continue;
    std::string flag = "--" + k;
    std::replace(flag.begin(), flag.end(), '_', '-');
    args.push_back(flag);
    args.push_back(v);
  }
  return args;
}

}  // namespace maskkit::cli
