#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace maskkit::cli {

// Every output starts with a comment line "maskkit command=... key=value ...".
inline constexpr std::string_view kManifestTag = "maskkit";

class Manifest {
 public:
  explicit Manifest(std::string command);

  /// Appends, or replaces the value of an existing key in place.
  void set(const std::string& key, std::string value);
  /// Splits "k=v k=v" and sets each pair.
  void set_tokens(std::string_view text);

  const std::string& command() const noexcept { return command_; }
  const std::vector<std::pair<std::string, std::string>>& params() const noexcept { return params_; }
  std::optional<std::string> get(std::string_view key) const;

  /// Serialized form without the comment marker. Values are percent-escaped.
  std::string line() const;

  static std::optional<Manifest> parse(std::string_view line);
  /// First "# maskkit command=..." line in a file body.
  static std::optional<Manifest> find(std::string_view text);

  /// Argument vector that re-runs the command. version and rng are dropped.
  std::vector<std::string> to_args() const;

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> params_;
};

std::string escape_value(std::string_view raw);
std::string unescape_value(std::string_view text);

}  // namespace maskkit::cli
