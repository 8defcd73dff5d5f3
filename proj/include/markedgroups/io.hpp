#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "markedgroups/marked.hpp"

namespace mg::io {

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// Raised when stored bytes do not match their recorded digest, or a put
/// would overwrite an entry with different bytes.
class CacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Relation-ball files:
//
//   # markedgroups relation ball
//   group: quaternion(3)
//   marking: x,y
//   rank: 2
//   lambda: 4
//   count: 10
//   sha256: <digest of the body>
//   ---
//   1 1 -2 -2
//   ...
//
// The body is the shortlex word list, one word per line, letters as signed
// generator indices.

struct BallFile {
    std::string group;
    std::string marking;
    RelationBall ball;
    std::string digest;
};

std::string ball_body(const RelationBall& ball);
std::string serialize_ball(const MarkedGroup& mg, const RelationBall& ball);
std::string serialize_ball(std::string_view group, std::string_view marking, const RelationBall& ball);
/// Throws InputError on malformed input, CacheError on a count or digest mismatch.
BallFile parse_ball(std::string_view text);

/// Digest of the body bytes of a ball.
std::string ball_digest(const RelationBall& ball);

std::string cache_key(std::string_view descriptor, std::string_view marking, int lambda);

/// Directory from MARKEDGROUPS_CACHE, else `.markedgroups-cache` under the
/// working directory.
std::filesystem::path default_cache_dir();

/// Content-addressed, write-once store of relation-ball files.
class BallCache {
public:
    explicit BallCache(std::filesystem::path dir);

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path path_for(std::string_view key) const;

    /// Raw bytes, verified against the embedded digest.
    std::optional<std::string> get_bytes(std::string_view key) const;
    std::optional<BallFile> get(std::string_view key) const;
    /// Stores bytes under key. Re-putting identical bytes is a no-op;
    /// different bytes raise CacheError.
    void put(std::string_view key, std::string_view bytes) const;

private:
    std::filesystem::path dir_;
};

struct CachedBall {
    RelationBall ball;
    std::string bytes;
    bool hit = false;
};

/// rel_ball through the cache (no cache when `cache` is null).
CachedBall cached_rel_ball(const MarkedGroup& mg, int lambda, const BallCache* cache);

std::string read_file(const std::filesystem::path& p);
/// Writes via a temporary file and rename.
void write_file(const std::filesystem::path& p, std::string_view bytes);

}  // namespace mg::io
