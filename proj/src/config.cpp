#include "sns/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <sstream>

#include "sns/errors.hpp"
#include "sns/io.hpp"

namespace sns {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<std::string> get_str(const pt::ptree& tree, const std::string& key) {
  if (auto v = tree.get_optional<std::string>(key)) {
    std::string t = trim(*v);
    if (!t.empty()) return t;
  }
  return std::nullopt;
}

template <class T>
T parse_number(const std::string& text, const std::string& field) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("field " + field + ": cannot parse '" + text + "'");
  }
  return v;
}

template <class T>
std::optional<T> get_number(const pt::ptree& tree, const std::string& key) {
  if (auto s = get_str(tree, key)) return parse_number<T>(*s, key);
  return std::nullopt;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(s);
  while (std::getline(is, cell, sep)) out.push_back(trim(cell));
  return out;
}

Vector parse_vector(const std::string& text, const std::string& field) {
  std::vector<double> vals;
  for (const auto& c : split(text, ',')) {
    if (c.empty()) continue;
    vals.push_back(parse_number<double>(c, field));
  }
  return Eigen::Map<Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

bool parse_bool(const std::string& text, const std::string& field) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("field " + field + ": expected true/false, got '" + text + "'");
}

Partition parse_partition(const std::string& text, Eigen::Index k) {
  if (text.find_first_of(",;") == std::string::npos) {
    const auto n = parse_number<long long>(text, "sampler.partition");
    if (n < 1 || n > k) {
      throw ConfigError("field sampler.partition: subset count must be in [1, " +
                        std::to_string(k) + "]");
    }
    return make_partition(k, n);
  }
  Partition part;
  for (const auto& block : split(text, ';')) {
    std::vector<Eigen::Index> subset;
    for (const auto& c : split(block, ',')) {
      if (c.empty()) continue;
      subset.push_back(parse_number<long long>(c, "sampler.partition") - 1);
    }
    part.subsets.push_back(std::move(subset));
  }
  const auto violations = check_partition(part, k);
  if (!violations.empty()) {
    throw ConfigError("field sampler.partition: " + violations.front().describe(1));
  }
  return part;
}

std::shared_ptr<const LogDensityTarget> build_target(const pt::ptree& tree,
                                                     const std::filesystem::path& base_dir,
                                                     std::string& kind) {
  const auto k = get_str(tree, "target.kind");
  if (!k) throw ConfigError("field target.kind is required");
  kind = *k;

  if (kind == "mvgaussian") {
    const auto mean_s = get_str(tree, "target.mean");
    const auto prec_s = get_str(tree, "target.precision");
    if (mean_s || prec_s) {
      if (!mean_s || !prec_s) {
        throw ConfigError("field target.mean and target.precision must be given together");
      }
      Vector mean = parse_vector(*mean_s, "target.mean");
      Vector flat = parse_vector(*prec_s, "target.precision");
      const Eigen::Index dim = mean.size();
      if (flat.size() != dim * dim) {
        throw ConfigError("field target.precision: expected " + std::to_string(dim * dim) +
                          " entries for dimension " + std::to_string(dim));
      }
      Matrix prec = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
          flat.data(), dim, dim);
      return std::make_shared<MvGaussianTarget>(std::move(mean), std::move(prec));
    }
    const auto dim = get_number<long long>(tree, "target.dim");
    if (!dim || *dim < 1) throw ConfigError("field target.dim must be a positive integer");
    const auto seed = get_number<std::uint64_t>(tree, "target.seed").value_or(0);
    auto [mean, prec] = random_mvgaussian(*dim, seed);
    return std::make_shared<MvGaussianTarget>(std::move(mean), std::move(prec));
  }

  if (kind == "poisson_glm") {
    const auto xs = get_str(tree, "target.x");
    const auto ys = get_str(tree, "target.y");
    if (!xs) throw ConfigError("field target.x (design matrix CSV) is required");
    if (!ys) throw ConfigError("field target.y (response CSV) is required");
    GlmData data;
    try {
      data.x = io::read_csv(base_dir / *xs).values;
      io::Table yt = io::read_csv(base_dir / *ys);
      if (yt.values.cols() != 1) throw ConfigError("field target.y: response CSV must have one column");
      data.y = yt.values.col(0);
      data.validate();
    } catch (const io::IoError& e) {
      throw ConfigError(std::string("field target.x/target.y: ") + e.what());
    } catch (const ContractError& e) {
      throw ConfigError(std::string("field target.x/target.y: ") + e.what());
    }
    for (Eigen::Index i = 0; i < data.y.size(); ++i) {
      if (data.y[i] < 0 || std::floor(data.y[i]) != data.y[i]) {
        throw ConfigError("field target.y: row " + std::to_string(i + 1) +
                          " is not a nonnegative integer");
      }
    }
    return make_poisson_target(std::move(data));
  }

  throw ConfigError("field target.kind: unknown kind '" + kind +
                    "' (expected mvgaussian or poisson_glm)");
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& path) {
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("cannot parse config: ") + e.what());
  }
  const auto base_dir = path.parent_path();

  RunConfig cfg;
  try {
    cfg.target = build_target(tree, base_dir, cfg.target_kind);
  } catch (const NotNegativeDefinite& e) {
    throw ConfigError(std::string("field target.precision: ") + e.what());
  } catch (const ContractError& e) {
    throw ConfigError(std::string("target: ") + e.what());
  }
  const Eigen::Index k = cfg.target->dim();

  const auto niter = get_number<long long>(tree, "sampler.niter");
  if (!niter || *niter < 1) throw ConfigError("field sampler.niter must be a positive integer");
  const auto nnr = get_number<long long>(tree, "sampler.nnr").value_or(0);
  if (nnr < 0) throw ConfigError("field nnr must be nonnegative");
  if (nnr > *niter) {
    throw ConfigError("field nnr (" + std::to_string(nnr) + ") must not exceed sampler.niter (" +
                      std::to_string(*niter) + ")");
  }
  cfg.spec.niter = static_cast<std::size_t>(*niter);
  cfg.spec.nnr = static_cast<std::size_t>(nnr);
  cfg.spec.seed = get_number<std::uint64_t>(tree, "sampler.seed").value_or(0);
  if (auto s = get_str(tree, "sampler.mh_diag")) cfg.spec.collect_mh_diag = parse_bool(*s, "sampler.mh_diag");
  else cfg.spec.collect_mh_diag = true;
  if (auto s = get_str(tree, "sampler.partition")) cfg.spec.part = parse_partition(*s, k);

  cfg.x_init = Vector::Zero(k);
  if (auto s = get_str(tree, "sampler.init")) {
    if (*s != "zero") {
      cfg.x_init = parse_vector(*s, "sampler.init");
      if (cfg.x_init.size() != k) {
        throw ConfigError("field sampler.init: expected " + std::to_string(k) + " values, got " +
                          std::to_string(cfg.x_init.size()));
      }
    }
  }

  cfg.window = SummaryWindow::defaults(cfg.spec.niter);
  if (auto v = get_number<long long>(tree, "window.nburnin")) {
    if (*v < 0) throw ConfigError("field window.nburnin must be nonnegative");
    cfg.window.nburnin = static_cast<std::size_t>(*v);
  }
  if (auto v = get_number<long long>(tree, "window.end")) {
    if (*v < 1) throw ConfigError("field window.end must be positive");
    cfg.window.end = static_cast<std::size_t>(*v);
  }
  if (auto v = get_number<long long>(tree, "window.thin")) {
    if (*v < 1) throw ConfigError("field window.thin must be positive");
    cfg.window.thin = static_cast<std::size_t>(*v);
  }
  try {
    cfg.window.validate(cfg.spec.niter);
  } catch (const ContractError& e) {
    throw ConfigError(std::string("section window: ") + e.what());
  }

  cfg.out_dir = get_str(tree, "output.dir").value_or("sns_out");
  return cfg;
}

}  // namespace sns
