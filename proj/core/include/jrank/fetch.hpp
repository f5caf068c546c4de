#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace jrank {

/// One remote file of the dataset.
struct DatasetFile {
  std::string name;  // relative path inside the cache directory
  std::string url;
  std::optional<std::string> sha256;  // lowercase hex digest to pin
};

struct FetchOptions {
  std::filesystem::path cache_dir;
  /// Only use the cache; a missing file is a NetworkError.
  bool offline = false;
  long timeout_seconds = 60;
};

struct FetchResult {
  std::vector<std::filesystem::path> paths;
  std::size_t downloaded = 0;
};

/// Manifest lines: `name url [sha256]`; '#' starts a comment.
std::vector<DatasetFile> parse_manifest(const std::filesystem::path& path);

/// Downloads missing files into the cache (an existing file with a matching
/// digest is never re-fetched). Holds an advisory lock on the cache
/// directory. Errors: NetworkError, ChecksumMismatch, IoError.
FetchResult fetch_dataset(const std::vector<DatasetFile>& files, const FetchOptions& options);

/// Cache directory from JRANK_CACHE_DIR, else $XDG_CACHE_HOME/jrank, else
/// ~/.cache/jrank.
std::filesystem::path default_cache_dir();

std::string sha256_file(const std::filesystem::path& path);

}  // namespace jrank
