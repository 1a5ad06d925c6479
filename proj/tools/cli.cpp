#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "sl0mca/coeff_io.hpp"
#include "sl0mca/decompose.hpp"
#include "sl0mca/errors.hpp"
#include "sl0mca/imgio.hpp"
#include "sl0mca/inpaint.hpp"
#include "sl0mca/report.hpp"
#include "sl0mca/synthetic.hpp"
#include "sl0mca/transforms.hpp"

namespace sl0mca::cli {
namespace {

struct DictionaryFlags {
  std::size_t block = kDefaultDctBlock;
  int levels = kDefaultWaveletLevels;
  bool crop = false;
};

struct DecomposeArgs {
  std::string input;
  std::string out_texture;
  std::string out_cartoon;
  std::string out_coeffs;
  std::string report;
  DictionaryFlags dict;
  SolverConfig solver;
  double mu = 2.0;
};

struct InpaintArgs {
  std::string input;
  std::string mask;
  std::string out;
  std::string truth;
  std::string report;
  DictionaryFlags dict;
  InpaintConfig cfg;
  double mu = 2.0;
};

struct MetricsArgs {
  std::string a;
  std::string b;
  std::string mask;
};

struct SynthArgs {
  std::size_t size = 64;
  double missing = 0.2;
  std::uint64_t seed = 1;
  std::string out_image;
  std::string out_mask;
  std::string out_cartoon;
  std::string out_texture;
};

// Raised for argument-level problems detected after parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

void add_dictionary_flags(CLI::App* app, DictionaryFlags& d) {
  app->add_option("--block", d.block, "Local DCT block size")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--levels", d.levels, "Wavelet resolution levels")->capture_default_str()->check(CLI::Range(1, 30));
  app->add_flag("--crop", d.crop, "Crop the input (top-left) to the largest size the dictionaries accept");
}

std::size_t required_multiple(const DictionaryFlags& d) {
  return std::lcm(d.block, std::size_t{1} << d.levels);
}

ImageGrid crop(const ImageGrid& img, std::size_t h, std::size_t w) {
  ImageGrid out(h, w);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) out(r, c) = img(r, c);
  }
  return out;
}

MaskGrid crop(const MaskGrid& m, std::size_t h, std::size_t w) {
  MaskGrid out(h, w);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) out.set(r, c, m.known(r, c));
  }
  return out;
}

// Returns the working (height, width), cropping when allowed.
std::pair<std::size_t, std::size_t> working_shape(const ImageGrid& img, const DictionaryFlags& d) {
  const std::size_t m = required_multiple(d);
  if (img.height() % m == 0 && img.width() % m == 0) return {img.height(), img.width()};
  if (!d.crop) {
    throw UsageError("image is " + std::to_string(img.height()) + "x" + std::to_string(img.width()) +
                     "; both dimensions must be divisible by " + std::to_string(m) + " (block size " +
                     std::to_string(d.block) + " and 2^levels = " + std::to_string(std::size_t{1} << d.levels) +
                     "); pass --crop to crop automatically");
  }
  const std::size_t h = img.height() / m * m;
  const std::size_t w = img.width() / m * m;
  if (h == 0 || w == 0) throw UsageError("image is smaller than the dictionary tile of " + std::to_string(m));
  return {h, w};
}

CombinedOperator make_dictionaries(std::size_t h, std::size_t w, const DictionaryFlags& d) {
  return CombinedOperator(std::make_shared<BlockDctDictionary>(h, w, d.block),
                          std::make_shared<MultiscaleDictionary>(h, w, d.levels));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << text;
  if (!f) throw IoError("write failed: " + path);
}

void check_finite(const Eigen::VectorXd& v, const char* what) {
  if (!v.allFinite()) throw SingularityError(std::string(what) + " contains non-finite values");
}

void log_iterations(std::ostream& err, const char* cmd, const std::vector<IterationRecord>& rows,
                    std::chrono::steady_clock::duration elapsed) {
  for (const auto& r : rows) {
    err << '[' << cmd << "] outer " << r.n << '/' << rows.size() << " sigma=" << format_double(r.sigma)
        << " lambda=" << format_double(r.lambda) << " residual=" << format_double(r.residual) << '\n';
  }
  err << '[' << cmd << "] done in "
      << std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() << " ms\n";
}

int cmd_decompose(DecomposeArgs a, std::ostream& err) {
  a.solver.mu_texture = a.solver.mu_cartoon = a.mu;
  a.solver.validate();
  ImageGrid img = read_image(a.input);
  const auto [h, w] = working_shape(img, a.dict);
  if (h != img.height() || w != img.width()) img = crop(img, h, w);

  const CombinedOperator comb = make_dictionaries(h, w, a.dict);
  const auto t0 = std::chrono::steady_clock::now();
  const DecompositionResult res = decompose(img, comb, a.solver);
  check_finite(res.coeffs.texture, "texture coefficients");
  check_finite(res.coeffs.cartoon, "cartoon coefficients");
  log_iterations(err, "decompose", res.iterations, std::chrono::steady_clock::now() - t0);

  if (!a.out_texture.empty()) write_image(res.texture, a.out_texture);
  if (!a.out_cartoon.empty()) write_image(res.cartoon, a.out_cartoon);
  if (!a.out_coeffs.empty()) {
    Eigen::VectorXd all(res.coeffs.total_size());
    all << res.coeffs.texture, res.coeffs.cartoon;
    write_coefficients(a.out_coeffs, all);
  }
  if (!a.report.empty()) {
    RunReport rep;
    rep.rows = res.iterations;
    rep.params = {{"command", "decompose"},
                  {"outer", std::to_string(a.solver.outer)},
                  {"inner", std::to_string(a.solver.inner)},
                  {"sigma_decay", format_double(a.solver.sigma_decay)},
                  {"mu", format_double(a.mu)},
                  {"block", std::to_string(a.dict.block)},
                  {"levels", std::to_string(a.dict.levels)},
                  {"height", std::to_string(h)},
                  {"width", std::to_string(w)}};
    write_text(a.report, format_report(rep));
  }
  return kOk;
}

int cmd_inpaint(InpaintArgs a, std::ostream& err) {
  a.cfg.mu_texture = a.cfg.mu_cartoon = a.mu;
  a.cfg.validate();
  ImageGrid img = read_image(a.input);
  MaskGrid mask = read_mask(a.mask);
  if (!mask.matches(img)) throw UsageError("mask and input image differ in size");
  std::optional<ImageGrid> truth;
  if (!a.truth.empty()) {
    truth = read_image(a.truth);
    if (!truth->same_shape(img)) throw UsageError("ground-truth image and input image differ in size");
  }
  const auto [h, w] = working_shape(img, a.dict);
  if (h != img.height() || w != img.width()) {
    img = crop(img, h, w);
    mask = crop(mask, h, w);
    if (truth) truth = crop(*truth, h, w);
  }
  if (mask.known_count() == 0) throw UsageError("mask marks every pixel as missing");

  const CombinedOperator comb = make_dictionaries(h, w, a.dict);
  const auto t0 = std::chrono::steady_clock::now();
  const InpaintResult res = inpaint(img, mask, comb, a.cfg);
  check_finite(res.image.vector(), "reconstruction");
  log_iterations(err, "inpaint", res.decomposition.iterations, std::chrono::steady_clock::now() - t0);

  write_image(res.image, a.out);

  RunReport rep;
  rep.rows = res.decomposition.iterations;
  rep.params = {{"command", "inpaint"},
                {"outer", std::to_string(a.cfg.outer)},
                {"inner", std::to_string(a.cfg.inner)},
                {"lambda_max", format_double(a.cfg.lambda_max)},
                {"gamma", format_double(a.cfg.gamma)},
                {"mu_tv", format_double(a.cfg.mu_tv)},
                {"eps_tv", format_double(a.cfg.eps_tv)},
                {"sigma_decay", format_double(a.cfg.sigma_decay)},
                {"mu", format_double(a.mu)},
                {"block", std::to_string(a.dict.block)},
                {"levels", std::to_string(a.dict.levels)},
                {"reimpose", a.cfg.reimpose_known ? "true" : "false"},
                {"height", std::to_string(h)},
                {"width", std::to_string(w)}};
  if (truth) {
    if (mask.known_count() == mask.size()) {
      err << "[inpaint] no missing pixels; PSNR over missing region not reported\n";
    } else {
      rep.psnr_missing = psnr(res.image, *truth, mask);
      err << "[inpaint] PSNR over missing pixels: " << format_double(*rep.psnr_missing) << " dB\n";
    }
  }
  if (!a.report.empty()) write_text(a.report, format_report(rep));
  return kOk;
}

std::string format_psnr(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

int cmd_metrics(const MetricsArgs& a, std::ostream& out) {
  const ImageGrid x = read_image(a.a);
  const ImageGrid y = read_image(a.b);
  if (!x.same_shape(y)) throw UsageError("images differ in size");
  std::optional<MaskGrid> mask;
  if (!a.mask.empty()) {
    mask = read_mask(a.mask);
    if (!mask->matches(x)) throw UsageError("mask differs in size from the images");
    if (mask->known_count() == mask->size()) throw UsageError("mask has no missing pixels to compare");
  }
  out << format_psnr(psnr(x, y, mask)) << '\n';
  return kOk;
}

int cmd_synth(const SynthArgs& a) {
  SceneOptions opts;
  opts.size = a.size;
  if (a.size % opts.block != 0) throw UsageError("--size must be a multiple of 32");
  const SyntheticScene scene = make_cartoon_texture_scene(opts);
  const MaskGrid mask = make_random_mask(a.size, a.size, a.missing, a.seed);
  if (!a.out_image.empty()) write_image(scene.image, a.out_image);
  if (!a.out_mask.empty()) write_mask(mask, a.out_mask);
  if (!a.out_cartoon.empty()) write_image(scene.cartoon, a.out_cartoon);
  if (!a.out_texture.empty()) write_image(scene.texture, a.out_texture);
  return kOk;
}

// Reads "key=value" lines (blank lines and '#' comments ignored) from the file
// named by --config and inserts "--key value" for every key the command line
// does not already set.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string path;
  std::size_t at = args.size();
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      at = i;
    } else if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
      at = i;
    }
  }
  if (at == args.size()) return args;

  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  auto given = [&](const std::string& flag) {
    for (const auto& a : args) {
      if (a == flag || a.starts_with(flag + "=")) return true;
    }
    return false;
  };
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::vector<std::string> extra;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config file " + path + " line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string flag = "--" + key;
    if (key.empty() || key == "config") {
      throw UsageError("config file " + path + " line " + std::to_string(line_no) + ": invalid key");
    }
    if (!given(flag)) {
      extra.push_back(flag);
      extra.push_back(trim(line.substr(eq + 1)));
    }
  }
  std::vector<std::string> out(args.begin(), args.end());
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(at), extra.begin(), extra.end());
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cartoon/texture decomposition and inpainting with smoothed-l0 sparsity", "sl0mca"};
  app.require_subcommand(1);

  DecomposeArgs dec;
  auto* dec_cmd = app.add_subcommand("decompose", "Split an image into texture (local DCT) and cartoon (wavelet) layers");
  std::string config_path;
  dec_cmd->add_option("--config", config_path, "key=value file; command-line flags take precedence");
  dec_cmd->add_option("--input", dec.input, "Input PGM")->required();
  dec_cmd->add_option("--out-texture", dec.out_texture, "Texture layer A s1 (PGM)");
  dec_cmd->add_option("--out-cartoon", dec.out_cartoon, "Cartoon layer B s2 (PGM)");
  dec_cmd->add_option("--out-coeffs", dec.out_coeffs, "Coefficient dump [s1; s2] (SPCF)");
  dec_cmd->add_option("--report", dec.report, "Per-iteration CSV report");
  add_dictionary_flags(dec_cmd, dec.dict);
  dec_cmd->add_option("--outer", dec.solver.outer, "Number of sigma values")->capture_default_str();
  dec_cmd->add_option("--inner", dec.solver.inner, "Steps per sigma")->capture_default_str();
  dec_cmd->add_option("--sigma-decay", dec.solver.sigma_decay, "Sigma decay factor")->capture_default_str();
  dec_cmd->add_option("--mu", dec.mu, "Step size in sigma^2 units")->capture_default_str();

  InpaintArgs inp;
  auto* inp_cmd = app.add_subcommand("inpaint", "Fill missing pixels");
  inp_cmd->add_option("--config", config_path, "key=value file; command-line flags take precedence");
  inp_cmd->add_option("--input", inp.input, "Input PGM")->required();
  inp_cmd->add_option("--mask", inp.mask, "Mask PGM (255 known, 0 missing)")->required();
  inp_cmd->add_option("--out", inp.out, "Reconstructed PGM")->required();
  inp_cmd->add_option("--truth", inp.truth, "Ground truth PGM for PSNR over missing pixels");
  inp_cmd->add_option("--report", inp.report, "Per-iteration CSV report");
  add_dictionary_flags(inp_cmd, inp.dict);
  inp_cmd->add_option("--lambda-max", inp.cfg.lambda_max, "Initial data-fidelity weight")->capture_default_str();
  inp_cmd->add_option("--gamma", inp.cfg.gamma, "TV weight on the cartoon layer")->capture_default_str();
  inp_cmd->add_option("--outer", inp.cfg.outer, "Number of sigma values")->capture_default_str();
  inp_cmd->add_option("--inner", inp.cfg.inner, "Descent steps per sigma")->capture_default_str();
  inp_cmd->add_option("--sigma-decay", inp.cfg.sigma_decay, "Sigma decay factor")->capture_default_str();
  inp_cmd->add_option("--mu", inp.mu, "Step size in sigma^2 units")->capture_default_str();
  inp_cmd->add_option("--mu-tv", inp.cfg.mu_tv, "TV correction step")->capture_default_str();
  inp_cmd->add_option("--eps-tv", inp.cfg.eps_tv, "TV smoothing")->capture_default_str();
  inp_cmd->add_option("--reimpose", inp.cfg.reimpose_known, "Restore known pixels in the output")
      ->capture_default_str();

  MetricsArgs met;
  auto* met_cmd = app.add_subcommand("metrics", "PSNR between two images");
  met_cmd->add_option("--a", met.a, "First PGM")->required();
  met_cmd->add_option("--b", met.b, "Second PGM")->required();
  met_cmd->add_option("--mask", met.mask, "Restrict to pixels this mask marks missing");

  SynthArgs syn;
  auto* syn_cmd = app.add_subcommand("synth", "Write the synthetic cartoon+texture scene and a random mask");
  syn_cmd->add_option("--size", syn.size, "Image side (multiple of 32)")->capture_default_str();
  syn_cmd->add_option("--missing", syn.missing, "Fraction of missing pixels")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  syn_cmd->add_option("--seed", syn.seed, "Mask seed")->capture_default_str();
  syn_cmd->add_option("--out-image", syn.out_image, "Scene PGM");
  syn_cmd->add_option("--out-mask", syn.out_mask, "Mask PGM");
  syn_cmd->add_option("--out-cartoon", syn.out_cartoon, "Cartoon layer PGM");
  syn_cmd->add_option("--out-texture", syn.out_texture, "Texture layer PGM (clamped to [0,1])");

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(args);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  std::vector<const char*> argv;
  argv.reserve(expanded.size());
  for (const auto& s : expanded) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*dec_cmd) return cmd_decompose(dec, err);
    if (*inp_cmd) return cmd_inpaint(inp, err);
    if (*met_cmd) return cmd_metrics(met, out);
    if (*syn_cmd) return cmd_synth(syn);
  } catch (const IoError& e) {  // includes parse and unsupported-format errors
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const SingularityError& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const Error& e) {  // dimension, parameter, validation, degenerate input
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace sl0mca::cli
