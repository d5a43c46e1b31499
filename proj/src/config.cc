#include "kert/config.h"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include "kert/error.h"
#include "kert/hash.h"
#include "kert/io.h"

namespace kert {
namespace {

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return std::string(s.substr(b, s.find_last_not_of(ws) - b + 1));
}

template <typename T>
T parse_value(std::string_view key, std::string_view text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("bad value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "on" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "off" || text == "no") return false;
  throw ConfigError("bad boolean '" + std::string(text) + "' for " + std::string(key));
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return fnv1a_hex(ss.str());
}

}  // namespace

void RunConfig::set(std::string_view raw_key, std::string_view value) {
  std::string key(raw_key);
  for (auto& c : key) {
    if (c == '-') c = '_';
  }
  if (key == "input") input = std::string(value);
  else if (key == "stopwords") stopwords = std::string(value);
  else if (key == "lowercase") tokenizer.lowercase = parse_bool(key, value);
  else if (key == "min_token_length") tokenizer.min_token_length = parse_value<std::size_t>(key, value);
  else if (key == "topics") model.topics = parse_value<int>(key, value);
  else if (key == "alpha") model.alpha = parse_value<double>(key, value);
  else if (key == "beta") model.beta = parse_value<double>(key, value);
  else if (key == "lambda") model.lambda = parse_value<double>(key, value);
  else if (key == "burn_in") model.burn_in = parse_value<int>(key, value);
  else if (key == "sweeps") model.total_sweeps = parse_value<int>(key, value);
  else if (key == "seed") model.seed = parse_value<std::uint64_t>(key, value);
  else if (key == "min_support") min_support = parse_value<std::size_t>(key, value);
  else if (key == "max_size") max_size = parse_value<std::size_t>(key, value);
  else if (key == "gamma") ranking.gamma = parse_value<double>(key, value);
  else if (key == "omega") ranking.omega = parse_value<double>(key, value);
  else if (key == "variant") ranking.variant = parse_variant(value);
  else if (key == "top") top = parse_value<std::size_t>(key, value);
  else if (key == "output_dir") output_dir = std::string(value);
  else if (key == "write_matrices") write_matrices = parse_bool(key, value);
  else throw ConfigError("unknown config key '" + std::string(raw_key) + "'");
}

void RunConfig::validate() const {
  model.validate();
  ranking.validate();
  if (min_support < 1) throw ConfigError("min_support must be >= 1");
  if (max_size < 1) throw ConfigError("max_size must be >= 1");
  if (tokenizer.min_token_length < 1) throw ConfigError("min_token_length must be >= 1");
}

std::string RunConfig::to_text() const {
  std::ostringstream out;
  out << "input = " << input.string() << '\n'
      << "stopwords = " << stopwords.string() << '\n'
      << "lowercase = " << (tokenizer.lowercase ? "true" : "false") << '\n'
      << "min_token_length = " << tokenizer.min_token_length << '\n'
      << "topics = " << model.topics << '\n'
      << "alpha = " << format_double(model.alpha) << '\n'
      << "beta = " << format_double(model.beta) << '\n'
      << "lambda = " << format_double(model.lambda) << '\n'
      << "burn_in = " << model.burn_in << '\n'
      << "sweeps = " << model.total_sweeps << '\n'
      << "seed = " << model.seed << '\n'
      << "min_support = " << min_support << '\n'
      << "max_size = " << max_size << '\n'
      << "gamma = " << format_double(ranking.gamma) << '\n'
      << "omega = " << format_double(ranking.omega) << '\n'
      << "variant = " << variant_name(ranking.variant) << '\n'
      << "top = " << top << '\n'
      << "output_dir = " << output_dir.string() << '\n'
      << "write_matrices = " << (write_matrices ? "true" : "false") << '\n';
  return out.str();
}

RunConfig parse_run_config(std::istream& in, const std::string& source, RunConfig config) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(source, line_no, "expected key = value");
    try {
      config.set(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  return parse_run_config(in, path.string(), std::move(base));
}

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv("KERT_OUTPUT_DIR"); env && *env) return env;
  return "kert_out";
}

std::string train_config_hash(const RunConfig& c) {
  std::ostringstream s;
  s << "train\ninput=" << file_digest(c.input)
    << "\nstopwords=" << (c.stopwords.empty() ? std::string("none") : file_digest(c.stopwords))
    << "\nlowercase=" << c.tokenizer.lowercase << "\nmin_token_length=" << c.tokenizer.min_token_length
    << "\ntopics=" << c.model.topics << "\nalpha=" << format_double(c.model.alpha)
    << "\nbeta=" << format_double(c.model.beta) << "\nlambda=" << format_double(c.model.lambda)
    << "\nburn_in=" << c.model.burn_in << "\nsweeps=" << c.model.total_sweeps
    << "\nseed=" << c.model.seed << '\n';
  return fnv1a_hex(s.str());
}

std::string mine_config_hash(std::string_view upstream, std::size_t min_support,
                             std::size_t max_size) {
  std::ostringstream s;
  s << "mine\nupstream=" << upstream << "\nmin_support=" << min_support
    << "\nmax_size=" << max_size << '\n';
  return fnv1a_hex(s.str());
}

std::string rank_config_hash(std::string_view upstream, const RankingConfig& r, std::size_t top) {
  std::ostringstream s;
  s << "rank\nupstream=" << upstream << "\ngamma=" << format_double(r.gamma)
    << "\nomega=" << format_double(r.omega) << "\nvariant=" << variant_name(r.variant)
    << "\ntop=" << top << '\n';
  return fnv1a_hex(s.str());
}

}  // namespace kert
