#ifndef BWM_SESSION_HPP
#define BWM_SESSION_HPP

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "json.hpp"

#include "bwm/error.hpp"
#include "bwm/io.hpp"
#include "bwm/model.hpp"
#include "bwm/rational.hpp"

namespace bwm {

using nlohmann::json;

enum class SessionState { SelectingExtremes, Comparing, Solved };

inline const char* state_name(SessionState s) {
  switch (s) {
    case SessionState::SelectingExtremes: return "selecting-extremes";
    case SessionState::Comparing: return "comparing";
    case SessionState::Solved: return "solved";
  }
  return "comparing";
}

// Failure of a session request, carrying the HTTP status to answer with.
class ApiError : public std::runtime_error {
 public:
  ApiError(int status, std::string code, const std::string& message)
      : std::runtime_error(message), status_(status), code_(std::move(code)) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }

 private:
  int status_;
  std::string code_;
};

inline std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// One decision-maker's elicitation in progress. Entries accumulate; the
// result is recomputed eagerly whenever the instance is complete.
struct Session {
  std::string id;
  std::size_t n = 0;
  std::optional<std::size_t> best;
  std::optional<std::size_t> worst;
  std::map<std::size_t, Rational> best_to_others;
  std::optional<Rational> best_to_worst;
  std::map<std::size_t, Rational> others_to_worst;
  std::string created;
  std::string updated;
  std::optional<json> result;

  SessionState state() const {
    if (!best || !worst) return SessionState::SelectingExtremes;
    return result ? SessionState::Solved : SessionState::Comparing;
  }

  BwmInput input() const {
    BwmInput raw;
    raw.n = n;
    raw.best = best.value_or(0);
    raw.worst = worst.value_or(0);
    raw.best_to_others = best_to_others;
    raw.best_to_worst = best_to_worst;
    raw.others_to_worst = others_to_worst;
    return raw;
  }

  std::size_t missing_entries() const {
    if (!best || !worst) return 2 * n - 3;
    return (n - 2 - best_to_others.size()) + (n - 2 - others_to_worst.size()) + (best_to_worst ? 0 : 1);
  }

  void recompute() {
    result.reset();
    if (state() == SessionState::SelectingExtremes || missing_entries() != 0) return;
    result = io::solve_document(validate_bwm(input()));
  }

  json to_json() const {
    json j;
    j["id"] = id;
    j["n"] = n;
    j["best"] = best ? json(*best + 1) : json(nullptr);
    j["worst"] = worst ? json(*worst + 1) : json(nullptr);
    json row = json::object();
    for (const auto& [k, v] : best_to_others) row[std::to_string(k + 1)] = v.str();
    json col = json::object();
    for (const auto& [k, v] : others_to_worst) col[std::to_string(k + 1)] = v.str();
    j["best_to_others"] = row;
    j["others_to_worst"] = col;
    j["best_to_worst"] = best_to_worst ? json(best_to_worst->str()) : json(nullptr);
    j["created"] = created;
    j["updated"] = updated;
    return j;
  }

  static Session from_json(const json& j) {
    Session s;
    s.id = j.at("id").get<std::string>();
    s.n = j.at("n").get<std::size_t>();
    if (!j.at("best").is_null()) s.best = j["best"].get<std::size_t>() - 1;
    if (!j.at("worst").is_null()) s.worst = j["worst"].get<std::size_t>() - 1;
    s.best_to_others = io::parse_entry_map(j.at("best_to_others"), "best_to_others");
    s.others_to_worst = io::parse_entry_map(j.at("others_to_worst"), "others_to_worst");
    if (!j.at("best_to_worst").is_null()) s.best_to_worst = io::parse_value(j["best_to_worst"]);
    s.created = j.value("created", "");
    s.updated = j.value("updated", "");
    s.recompute();
    return s;
  }
};

// Directory of session files, one JSON document per session. Mutations of
// a session are serialized by a per-session mutex and written through to
// disk before the call returns.
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

  const std::filesystem::path& directory() const { return dir_; }

  Session create(std::size_t n, std::optional<std::size_t> best, std::optional<std::size_t> worst) {
    if (n < 3) throw ApiError(422, "TooSmall", "need at least 3 alternatives");
    Session s;
    s.id = fresh_id();
    s.n = n;
    s.created = s.updated = utc_now();
    if (best || worst) choose_extremes(s, best, worst);
    auto lock = lock_session(s.id);
    write(s);
    return s;
  }

  Session get(const std::string& id) {
    auto lock = lock_session(id);
    return read(id);
  }

  // Applies fn to the stored session under its lock and persists the
  // outcome. fn throws to abort without writing.
  template <typename Fn>
  Session mutate(const std::string& id, Fn&& fn) {
    auto lock = lock_session(id);
    Session s = read(id);
    fn(s);
    s.updated = utc_now();
    s.recompute();
    write(s);
    return s;
  }

  static void choose_extremes(Session& s, std::optional<std::size_t> best, std::optional<std::size_t> worst) {
    if (best && s.best && *best != *s.best) throw ApiError(409, "Conflict", "best alternative already chosen");
    if (worst && s.worst && *worst != *s.worst) throw ApiError(409, "Conflict", "worst alternative already chosen");
    const auto b = best ? best : s.best;
    const auto w = worst ? worst : s.worst;
    if ((b && *b >= s.n) || (w && *w >= s.n)) throw ApiError(422, "BadIndices", "alternative index out of range");
    if (b && w && *b == *w) throw ApiError(409, "Conflict", "best and worst must differ");
    s.best = b;
    s.worst = w;
  }

 private:
  static bool valid_id(const std::string& id) {
    if (id.size() != 32) return false;
    for (char c : id)
      if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
    return true;
  }

  std::string fresh_id() {
    std::lock_guard lock(table_mutex_);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string id;
    do {
      id.clear();
      for (int k = 0; k < 2; ++k) {
        auto x = rng_();
        for (int nib = 0; nib < 16; ++nib, x >>= 4) id.push_back(kHex[x & 15]);
      }
    } while (std::filesystem::exists(path_for(id)));
    return id;
  }

  std::filesystem::path path_for(const std::string& id) const { return dir_ / (id + ".json"); }

  std::unique_lock<std::mutex> lock_session(const std::string& id) {
    std::shared_ptr<std::mutex> m;
    {
      std::lock_guard lock(table_mutex_);
      auto& slot = locks_[id];
      if (!slot) slot = std::make_shared<std::mutex>();
      m = slot;
    }
    return std::unique_lock<std::mutex>(*m);  // the table keeps m alive
  }

  Session read(const std::string& id) const {
    if (!valid_id(id) || !std::filesystem::exists(path_for(id)))
      throw ApiError(404, "NotFound", "unknown session '" + id + "'");
    std::ifstream in(path_for(id));
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ApiError(500, "Corrupt", std::string("session file unreadable: ") + e.what());
    }
    return Session::from_json(j);
  }

  void write(const Session& s) const {
    const auto target = path_for(s.id);
    auto tmp = target;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << s.to_json().dump(2) << '\n';
      if (!out) throw ApiError(500, "Io", "cannot write session file");
    }
    std::filesystem::rename(tmp, target);
  }

  std::filesystem::path dir_;
  std::mutex table_mutex_;
  std::map<std::string, std::shared_ptr<std::mutex>> locks_;
  std::mt19937_64 rng_{std::random_device{}()};
};

struct ApiResponse {
  int status = 200;
  json body;
};

// Request handlers of the session API, independent of the HTTP transport.
class SessionService {
 public:
  explicit SessionService(std::filesystem::path dir) : store_(std::move(dir)) {}

  SessionStore& store() { return store_; }

  ApiResponse create(const std::string& body) {
    return guarded([&] {
      const auto j = parse_body(body);
      if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<std::int64_t>() < 0)
        throw ApiError(422, "Parse", "field 'n' must be a nonnegative integer");
      const auto s = store_.create(j["n"].get<std::size_t>(), opt_index(j, "best"), opt_index(j, "worst"));
      return ApiResponse{201, view(s)};
    });
  }

  // Merges any of best, worst, best_to_others, best_to_worst,
  // others_to_worst into the session.
  ApiResponse update(const std::string& id, const std::string& body) {
    return guarded([&] {
      const auto j = parse_body(body);
      const auto s = store_.mutate(id, [&](Session& s) {
        SessionStore::choose_extremes(s, opt_index(j, "best"), opt_index(j, "worst"));
        if (j.contains("best_to_others"))
          for (const auto& [k, v] : io::parse_entry_map(j["best_to_others"], "best_to_others"))
            set_cell(s, *s.best, k, v);
        if (j.contains("others_to_worst"))
          for (const auto& [k, v] : io::parse_entry_map(j["others_to_worst"], "others_to_worst"))
            set_cell(s, k, *s.worst, v);
        if (j.contains("best_to_worst")) {
          require_extremes(s);
          set_cell(s, *s.best, *s.worst, io::parse_value(j["best_to_worst"]));
        }
      });
      return ApiResponse{200, view(s)};
    });
  }

  // {"row": i, "col": j, "value": "8"} overwrites a_ij; without "value" the
  // comparison is cleared and must be entered again.
  ApiResponse reset(const std::string& id, const std::string& body) {
    return guarded([&] {
      const auto j = parse_body(body);
      const auto row = opt_index(j, "row");
      const auto col = opt_index(j, "col");
      if (!row || !col) throw ApiError(422, "Parse", "fields 'row' and 'col' are required");
      const auto s = store_.mutate(id, [&](Session& s) {
        if (j.contains("value") && !j["value"].is_null())
          set_cell(s, *row, *col, io::parse_value(j["value"]));
        else
          clear_cell(s, *row, *col);
      });
      return ApiResponse{200, view(s)};
    });
  }

  ApiResponse result(const std::string& id) {
    return guarded([&] { return ApiResponse{200, view(store_.get(id))}; });
  }

  static json view(const Session& s) {
    json j;
    j["id"] = s.id;
    j["state"] = state_name(s.state());
    j["session"] = s.to_json();
    j["missing"] = s.missing_entries();
    if (s.result) {
      j["result"] = *s.result;
      j["needs_reexamination"] = (*s.result)["reexamination"]["needed"];
    } else {
      j["needs_reexamination"] = false;
    }
    return j;
  }

 private:
  template <typename Fn>
  static ApiResponse guarded(Fn&& fn) {
    try {
      return fn();
    } catch (const ApiError& e) {
      return ApiResponse{e.status(), io::error_json(e.code(), e.what())};
    } catch (const Error& e) {
      const int status = e.code() == Errc::Parse ? 400 : 422;
      return ApiResponse{status, io::error_json(std::string(errc_name(e.code())), e.what())};
    } catch (const std::exception& e) {
      return ApiResponse{500, io::error_json("Internal", e.what())};
    }
  }

  static json parse_body(const std::string& body) {
    try {
      auto j = json::parse(body.empty() ? "{}" : body);
      if (!j.is_object()) throw ApiError(400, "Parse", "request body must be a JSON object");
      return j;
    } catch (const json::parse_error& e) {
      throw ApiError(400, "Parse", e.what());
    }
  }

  static std::optional<std::size_t> opt_index(const json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    try {
      return io::parse_index(j[key], key);
    } catch (const Error& e) {
      throw ApiError(422, "Parse", e.what());
    }
  }

  static void require_extremes(const Session& s) {
    if (!s.best || !s.worst) throw ApiError(409, "Conflict", "choose best and worst alternatives first");
  }

  // Only a_Bj and a_jW exist in a best-worst matrix; the judgment must be
  // a dominance value in (1, 9].
  static void set_cell(Session& s, std::size_t row, std::size_t col, const Rational& v) {
    require_extremes(s);
    if (row >= s.n || col >= s.n) throw ApiError(422, "BadIndices", "alternative index out of range");
    const auto b = *s.best;
    const auto w = *s.worst;
    if (row == col || (row != b && col != w))
      throw ApiError(409, "Conflict", "only comparisons against the chosen best or worst can be entered");
    try {
      ComparisonValue::make(v);
    } catch (const Error& e) {
      throw ApiError(422, "OutOfScale", e.what());
    }
    if (v <= Rational(1)) throw ApiError(422, "NotDominant", "judgment " + v.str() + " must exceed 1");
    if (row == b && col == w)
      s.best_to_worst = v;
    else if (row == b)
      s.best_to_others[col] = v;
    else
      s.others_to_worst[row] = v;
  }

  static void clear_cell(Session& s, std::size_t row, std::size_t col) {
    require_extremes(s);
    const auto b = *s.best;
    const auto w = *s.worst;
    if (row == b && col == w)
      s.best_to_worst.reset();
    else if (row == b && col < s.n && col != b)
      s.best_to_others.erase(col);
    else if (col == w && row < s.n && row != w)
      s.others_to_worst.erase(row);
    else
      throw ApiError(409, "Conflict", "not a comparison of this best-worst matrix");
  }

  SessionStore store_;
};

}  // namespace bwm

#endif  // BWM_SESSION_HPP
