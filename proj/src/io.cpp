#include "markedgroups/io.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace mg::io {

std::string sha256_hex(std::string_view data) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
        throw std::runtime_error("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string ball_body(const RelationBall& ball) {
    std::string out;
    for (const auto& w : ball.words) {
        out += w.to_signed_text();
        out += '\n';
    }
    return out;
}

std::string ball_digest(const RelationBall& ball) { return sha256_hex(ball_body(ball)); }

std::string serialize_ball(std::string_view group, std::string_view marking, const RelationBall& ball) {
    const std::string body = ball_body(ball);
    std::ostringstream os;
    os << "# markedgroups relation ball\n"
       << "group: " << group << '\n'
       << "marking: " << marking << '\n'
       << "rank: " << ball.rank << '\n'
       << "lambda: " << ball.radius << '\n'
       << "count: " << ball.words.size() << '\n'
       << "sha256: " << sha256_hex(body) << '\n'
       << "---\n"
       << body;
    return os.str();
}

std::string serialize_ball(const MarkedGroup& mg, const RelationBall& ball) {
    return serialize_ball(mg.group().descriptor(), mg.marking_text(), ball);
}

namespace {

long long to_int(std::string_view s, const char* field) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw InputError(std::string("ball file: bad ") + field + " '" + std::string(s) + "'");
    return v;
}

}  // namespace

BallFile parse_ball(std::string_view text) {
    BallFile f;
    std::size_t pos = 0;
    auto next_line = [&]() -> std::optional<std::string_view> {
        if (pos >= text.size()) return std::nullopt;
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        return line;
    };
    long long count = -1;
    bool have_rank = false, have_lambda = false;
    for (;;) {
        auto line = next_line();
        if (!line) throw InputError("ball file: missing '---' separator");
        if (*line == "---") break;
        if (line->empty() || line->front() == '#') continue;
        auto colon = line->find(": ");
        if (colon == std::string_view::npos) throw InputError("ball file: bad header line '" + std::string(*line) + "'");
        auto key = line->substr(0, colon);
        auto val = line->substr(colon + 2);
        if (key == "group") f.group = val;
        else if (key == "marking") f.marking = val;
        else if (key == "rank") f.ball.rank = static_cast<int>(to_int(val, "rank")), have_rank = true;
        else if (key == "lambda") f.ball.radius = static_cast<int>(to_int(val, "lambda")), have_lambda = true;
        else if (key == "count") count = to_int(val, "count");
        else if (key == "sha256") f.digest = val;
        else throw InputError("ball file: unknown header field '" + std::string(key) + "'");
    }
    if (!have_rank || !have_lambda || count < 0 || f.digest.empty()) throw InputError("ball file: incomplete header");
    const std::string_view body = text.substr(std::min(pos, text.size()));
    if (sha256_hex(body) != f.digest) throw CacheError("ball file: digest mismatch (corrupted content)");
    while (auto line = next_line()) {
        if (line->empty()) continue;
        f.ball.words.push_back(parse_signed_word(f.ball.rank, *line));
    }
    if (static_cast<long long>(f.ball.words.size()) != count) throw CacheError("ball file: word count mismatch");
    return f;
}

std::string cache_key(std::string_view descriptor, std::string_view marking, int lambda) {
    std::string material;
    material.append(descriptor).append("\n").append(marking).append("\n").append(std::to_string(lambda));
    return sha256_hex(material);
}

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("MARKEDGROUPS_CACHE"); env && *env) return env;
    return std::filesystem::current_path() / ".markedgroups-cache";
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InputError("cannot read " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

namespace {

std::filesystem::path temp_sibling(const std::filesystem::path& p) {
    static std::atomic<unsigned> counter{0};
    return p.parent_path() /
           (p.filename().string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++));
}

void write_raw(const std::filesystem::path& p, std::string_view bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) throw std::runtime_error("cannot write " + p.string());
}

}  // namespace

void write_file(const std::filesystem::path& p, std::string_view bytes) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    const auto tmp = temp_sibling(p);
    write_raw(tmp, bytes);
    std::filesystem::rename(tmp, p);
}

BallCache::BallCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path BallCache::path_for(std::string_view key) const {
    if (key.size() < 3) throw InputError("cache key too short");
    return dir_ / std::string(key.substr(0, 2)) / (std::string(key) + ".ball");
}

std::optional<std::string> BallCache::get_bytes(std::string_view key) const {
    const auto p = path_for(key);
    std::error_code ec;
    if (!std::filesystem::exists(p, ec)) return std::nullopt;
    std::string bytes = read_file(p);
    parse_ball(bytes);  // verifies the digest
    return bytes;
}

std::optional<BallFile> BallCache::get(std::string_view key) const {
    auto bytes = get_bytes(key);
    if (!bytes) return std::nullopt;
    return parse_ball(*bytes);
}

void BallCache::put(std::string_view key, std::string_view bytes) const {
    const auto p = path_for(key);
    std::filesystem::create_directories(p.parent_path());
    const auto tmp = temp_sibling(p);
    write_raw(tmp, bytes);
    // A hard link never replaces an existing entry, which keeps entries
    // write-once under concurrent writers.
    std::error_code ec;
    std::filesystem::create_hard_link(tmp, p, ec);
    std::filesystem::remove(tmp);
    if (!ec) return;
    if (ec != std::errc::file_exists) throw std::runtime_error("cache put failed: " + ec.message());
    if (read_file(p) != bytes) throw CacheError("cache entry " + std::string(key) + " exists with different bytes");
}

CachedBall cached_rel_ball(const MarkedGroup& mg, int lambda, const BallCache* cache) {
    CachedBall out;
    const std::string key = cache_key(mg.group().descriptor(), mg.marking_text(), lambda);
    if (cache) {
        if (auto bytes = cache->get_bytes(key)) {
            out.ball = parse_ball(*bytes).ball;
            out.bytes = std::move(*bytes);
            out.hit = true;
            return out;
        }
    }
    out.ball = rel_ball(mg, lambda);
    out.bytes = serialize_ball(mg, out.ball);
    if (cache) cache->put(key, out.bytes);
    return out;
}

}  // namespace mg::io
