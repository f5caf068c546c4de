#include "jrank/fetch.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <curl/curl.h>
#include <openssl/evp.h>

#include "jrank/error.hpp"

namespace jrank {

namespace {

namespace fs = std::filesystem;

class DirectoryLock {
 public:
  explicit DirectoryLock(const fs::path& dir) {
    const auto path = (dir / ".lock").string();
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) fail(ErrorCode::IoError, "cannot open lock file " + path);
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      fail(ErrorCode::IoError, "cannot lock " + path);
    }
  }
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;
  ~DirectoryLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }

 private:
  int fd_ = -1;
};

struct CurlGlobal {
  CurlGlobal() { curl_global_init(CURL_GLOBAL_DEFAULT); }
  ~CurlGlobal() { curl_global_cleanup(); }
};

std::size_t write_to_file(char* data, std::size_t size, std::size_t count, void* stream) {
  return std::fwrite(data, size, count, static_cast<std::FILE*>(stream)) * size;
}

void download(const DatasetFile& file, const fs::path& target, long timeout_seconds) {
  static CurlGlobal global;
  const fs::path partial = target.string() + ".part";
  std::FILE* out = std::fopen(partial.c_str(), "wb");
  if (!out) fail(ErrorCode::IoError, "cannot write " + partial.string());

  CURL* curl = curl_easy_init();
  if (!curl) {
    std::fclose(out);
    fail(ErrorCode::NetworkError, "curl initialisation failed");
  }
  char error_buffer[CURL_ERROR_SIZE] = {};
  curl_easy_setopt(curl, CURLOPT_URL, file.url.c_str());
  curl_easy_setopt(curl, CURLOPT_WRITEFUNCTION, write_to_file);
  curl_easy_setopt(curl, CURLOPT_WRITEDATA, out);
  curl_easy_setopt(curl, CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl, CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl, CURLOPT_TIMEOUT, timeout_seconds);
  curl_easy_setopt(curl, CURLOPT_CONNECTTIMEOUT, std::min(timeout_seconds, 20L));
  curl_easy_setopt(curl, CURLOPT_ERRORBUFFER, error_buffer);
  curl_easy_setopt(curl, CURLOPT_USERAGENT, "jrank-fetch");
  const CURLcode rc = curl_easy_perform(curl);
  curl_easy_cleanup(curl);
  const bool closed = std::fclose(out) == 0;

  std::error_code ec;
  if (rc != CURLE_OK) {
    fs::remove(partial, ec);
    const std::string reason = error_buffer[0] ? error_buffer : curl_easy_strerror(rc);
    fail(ErrorCode::NetworkError, file.url + ": " + reason);
  }
  if (!closed) {
    fs::remove(partial, ec);
    fail(ErrorCode::IoError, "short write to " + partial.string());
  }
  if (file.sha256) {
    const auto digest = sha256_file(partial);
    if (digest != *file.sha256) {
      fs::remove(partial, ec);
      fail(ErrorCode::ChecksumMismatch,
           file.name + ": expected sha256 " + *file.sha256 + ", got " + digest);
    }
  }
  fs::rename(partial, target, ec);
  if (ec) fail(ErrorCode::IoError, "cannot move " + partial.string() + ": " + ec.message());
}

}  // namespace

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    fail(ErrorCode::IoError, "sha256 unavailable");
  }
  std::array<char, 1 << 16> buffer{};
  while (in) {
    in.read(buffer.data(), buffer.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buffer.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx, digest, &length);
  EVP_MD_CTX_free(ctx);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 15];
  }
  return hex;
}

std::vector<DatasetFile> parse_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open manifest " + path.string());
  std::vector<DatasetFile> files;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    DatasetFile file;
    if (!(fields >> file.name)) continue;
    std::string digest;
    if (!(fields >> file.url)) {
      fail(ErrorCode::ParseError, "manifest line " + std::to_string(number) + ": missing url");
    }
    if (fields >> digest) file.sha256 = digest;
    std::string extra;
    if (fields >> extra) {
      fail(ErrorCode::ParseError, "manifest line " + std::to_string(number) + ": trailing fields");
    }
    if (file.name.starts_with('/') || file.name.find("..") != std::string::npos) {
      fail(ErrorCode::ParseError, "manifest line " + std::to_string(number) + ": unsafe name");
    }
    files.push_back(std::move(file));
  }
  return files;
}

FetchResult fetch_dataset(const std::vector<DatasetFile>& files, const FetchOptions& options) {
  const fs::path dir = options.cache_dir.empty() ? default_cache_dir() : options.cache_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create cache " + dir.string() + ": " + ec.message());
  DirectoryLock lock(dir);

  FetchResult result;
  for (const auto& file : files) {
    const fs::path target = dir / file.name;
    bool cached = fs::is_regular_file(target);
    if (cached && file.sha256 && sha256_file(target) != *file.sha256) {
      if (options.offline) {
        fail(ErrorCode::ChecksumMismatch, file.name + ": cached copy does not match pinned digest");
      }
      cached = false;
    }
    if (!cached) {
      if (options.offline) {
        fail(ErrorCode::NetworkError, "offline: " + file.name + " is not in " + dir.string());
      }
      fs::create_directories(target.parent_path(), ec);
      download(file, target, options.timeout_seconds);
      ++result.downloaded;
    }
    result.paths.push_back(target);
  }
  return result;
}

fs::path default_cache_dir() {
  if (const char* env = std::getenv("JRANK_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "jrank";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "jrank";
  return fs::temp_directory_path() / "jrank-cache";
}

}  // namespace jrank
