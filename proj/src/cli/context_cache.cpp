#include "heun/cli/context_cache.hpp"

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <system_error>

#include "heun/cli/report.hpp"

namespace heun::cli {

std::optional<std::filesystem::path> cache_file() {
  const char* dir = std::getenv("HEUN_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return std::filesystem::path(dir) / "contexts.json";
}

namespace {

nlohmann::json load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return nlohmann::json::object();
  const nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  return j.is_object() ? j : nlohmann::json::object();
}

void store(const std::filesystem::path& file, const nlohmann::json& j) {
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  const std::filesystem::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << j.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, file, ec);
}

}  // namespace

EllipticContext cached_context(double k2) {
  const auto file = cache_file();
  if (!file) return make_context(k2);
  nlohmann::json db = load(*file);
  const std::string key = format_double(k2);
  if (db.contains(key)) {
    try {
      const auto& e = db.at(key);
      return EllipticContext::restore(e.at("k2").get<double>(), e.at("K").get<double>(),
                                      e.at("Kprime").get<double>(), e.at("E").get<double>(),
                                      e.at("q").get<double>());
    } catch (const std::exception&) {
      // Fall through and rebuild the entry.
    }
  }
  EllipticContext ctx = make_context(k2);
  db[key] = {{"k2", ctx.k2()}, {"K", ctx.K()}, {"Kprime", ctx.Kprime()}, {"E", ctx.E()}, {"q", ctx.q()}};
  store(*file, db);
  return ctx;
}

}  // namespace heun::cli
