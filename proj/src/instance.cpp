#include "gdalab/instance.hpp"

#include "gdalab/circuit_io.hpp"

namespace gdalab {

using nlohmann::json;

const MinMaxOracle& LoadedProblem::problem() const {
  if (gda) return *gda;
  if (toy) return *toy;
  throw std::logic_error("empty problem");
}

namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("descriptor is missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("descriptor field '") + key + "': " + e.what());
  }
}

}  // namespace

LoadedProblem load_problem(const json& descriptor, const std::filesystem::path& base_dir) {
  if (!descriptor.is_object()) throw ConfigError("descriptor must be a JSON object");
  LoadedProblem out;
  out.descriptor = descriptor;
  out.ledger = make_ledger();

  if (descriptor.contains("toy")) {
    const auto name = field<std::string>(descriptor, "toy");
    const auto dim = descriptor.contains("dim") ? field<std::size_t>(descriptor, "dim") : std::size_t{1};
    if (dim == 0) throw ConfigError("toy dimension must be positive");
    if (name == "bilinear") {
      const double eps = descriptor.contains("eps") ? field<double>(descriptor, "eps") : 1e-6;
      out.toy = std::make_unique<BilinearToy>(dim, eps, out.ledger);
    } else if (name == "zero") {
      out.toy = std::make_unique<ZeroProblem>(dim, out.ledger);
    } else {
      throw ConfigError("unknown toy '" + name + "'");
    }
    return out;
  }

  if (!descriptor.contains("circuit")) throw ConfigError("descriptor needs 'circuit' or 'toy'");
  json cj = descriptor.at("circuit");
  if (cj.is_string()) {
    std::filesystem::path p = cj.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    cj = read_json_file(p);
    out.descriptor["circuit"] = cj;
  }
  auto circuit = std::make_shared<Circuit>(circuit_from_json(cj, out.ledger));
  if (auto v = validate_instance(*circuit); !v.empty()) {
    std::string msg = "invalid circuit:";
    for (const auto& s : v) msg += " " + s.message + ";";
    throw ConfigError(msg);
  }
  out.circuit = circuit;

  const std::string mode = descriptor.contains("mode") ? field<std::string>(descriptor, "mode") : "scaled";
  const double rho = descriptor.contains("rho") ? field<double>(descriptor, "rho") : 1.0 / 12.0;
  const int m = static_cast<int>(circuit->size());
  GdaParams params;
  try {
    if (mode == "paper") {
      ParamDerivation d = derive_parameters(m, rho);
      if (auto* inf = std::get_if<PaperScaleInfeasible>(&d)) throw PaperModeRequest(*inf);
      params = std::get<GdaParams>(d);
    } else if (mode == "scaled") {
      const double n = field<double>(descriptor, "n");
      if (!(n >= 1) || n != static_cast<double>(static_cast<std::uint64_t>(n))) {
        throw ConfigError("n must be a positive integer");
      }
      params = scaled_parameters(m, rho, field<double>(descriptor, "delta"), static_cast<std::uint64_t>(n),
                                 field<double>(descriptor, "eps"));
    } else {
      throw ConfigError("mode must be 'scaled' or 'paper'");
    }
    out.gda = std::make_unique<GdaInstance>(circuit, params, out.ledger);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return out;
}

LoadedProblem load_problem(const std::filesystem::path& path) {
  return load_problem(read_json_file(path), path.parent_path());
}

}  // namespace gdalab
