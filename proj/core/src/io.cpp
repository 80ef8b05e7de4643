#include "wasnem/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "wasnem/errors.hpp"

namespace wasnem {
namespace {

std::string shortest(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string_view to_string(BlockScope scope) {
  return scope == BlockScope::frame ? "frame" : "window";
}

// Strict field reader over one JSON object.
class Reader {
 public:
  Reader(const Json& obj, std::string layer, std::string prefix)
      : obj_(obj), layer_(std::move(layer)), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) {
      throw ConfigError(layer_, prefix_.empty() ? std::string("(root)") : prefix_,
                        "expected an object");
    }
  }

  std::string path(std::string_view key) const {
    return prefix_.empty() ? std::string(key) : prefix_ + "." + std::string(key);
  }
  const std::string& layer() const { return layer_; }

  // nullptr when absent or null.
  const Json* find(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw ConfigError(layer_, path(key), msg);
  }

  double quantity_value(const std::string& key, const Json& j, Dimension dim) const {
    double v = 0.0;
    if (j.is_number()) {
      v = j.get<double>();
      if (dim == Dimension::ratio_db) v = db_to_linear(v);
    } else if (j.is_string()) {
      try {
        v = parse_quantity(j.get<std::string>(), dim);
      } catch (const std::invalid_argument& e) {
        fail(key, e.what());
      }
    } else {
      fail(key, "expected a number or a '<number> <unit>' string");
    }
    if (!std::isfinite(v)) fail(key, "must be finite");
    return v;
  }

  void quantity(const std::string& key, double& out, Dimension dim) {
    if (const Json* j = find(key)) out = quantity_value(key, *j, dim);
  }
  void quantity(const std::string& key, std::optional<double>& out, Dimension dim) {
    if (const Json* j = find(key)) out = quantity_value(key, *j, dim);
  }

  std::uint64_t integer_value(const std::string& key, const Json& j,
                              Dimension dim = Dimension::count) const {
    double v = 0.0;
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer()) fail(key, "must be >= 0");
    if (j.is_number_float()) {
      v = j.get<double>();
    } else if (j.is_string() && dim == Dimension::bits) {
      v = quantity_value(key, j, dim);
    } else {
      fail(key, "expected a non-negative integer");
    }
    if (!(v >= 0.0) || v != std::floor(v) || v > 9.007199254740992e15) {
      fail(key, "expected a non-negative integer");
    }
    return static_cast<std::uint64_t>(v);
  }

  template <class T>
  void integer(const std::string& key, T& out, Dimension dim = Dimension::count) {
    if (const Json* j = find(key)) {
      const std::uint64_t v = integer_value(key, *j, dim);
      if (v > std::numeric_limits<T>::max()) fail(key, "value too large");
      out = static_cast<T>(v);
    }
  }
  template <class T>
  void integer(const std::string& key, std::optional<T>& out, Dimension dim = Dimension::count) {
    if (const Json* j = find(key)) {
      T v{};
      integer(key, v, dim);
      out = v;
    }
  }

  void integer_list(const std::string& key, std::vector<std::uint64_t>& out) {
    if (const Json* j = find(key)) {
      if (!j->is_array()) fail(key, "expected an array of integers");
      out.clear();
      for (std::size_t i = 0; i < j->size(); ++i) {
        out.push_back(integer_value(key + "." + std::to_string(i), (*j)[i]));
      }
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const Json* j = find(key)) {
      if (!j->is_boolean()) fail(key, "expected true or false");
      out = j->get<bool>();
    }
  }

  void string(const std::string& key, std::string& out) {
    if (const Json* j = find(key)) {
      if (!j->is_string()) fail(key, "expected a string");
      out = j->get<std::string>();
    }
  }

  template <class E>
  bool enumeration(const std::string& key, E& out, std::initializer_list<E> all) {
    const Json* j = find(key);
    if (j == nullptr) return false;
    std::string choices;
    if (j->is_string()) {
      for (E e : all) {
        if (to_string(e) == j->get<std::string>()) {
          out = e;
          return true;
        }
      }
    }
    for (E e : all) choices += (choices.empty() ? "" : ", ") + std::string(to_string(e));
    fail(key, "expected one of: " + choices);
  }

  void op_counts(const std::string& key, OpCounts& out) {
    if (const Json* j = find(key)) {
      Reader sub(*j, layer_, path(key));
      for (OpClass op : kAllOpClasses) sub.integer(std::string(op_class_name(op)), out[op]);
      sub.finish();
    }
  }
  void op_counts(const std::string& key, std::optional<OpCounts>& out) {
    if (find(key) != nullptr) {
      OpCounts v{};
      op_counts(key, v);
      out = v;
    }
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.contains(it.key())) fail(it.key(), "unknown field");
    }
  }

 private:
  const Json& obj_;
  std::string layer_;
  std::string prefix_;
  std::set<std::string, std::less<>> seen_;
};

// "16 dB" when that text reproduces the stored value exactly, "<x> lin" otherwise.
Json ratio_json(double linear) {
  const std::string db = shortest(linear_to_db(linear));
  double back = 0.0;
  std::from_chars(db.data(), db.data() + db.size(), back);
  if (db_to_linear(back) == linear) return db + " dB";
  return shortest(linear) + " lin";
}

Json ops_json(const OpCounts& ops) {
  Json j = Json::object();
  for (OpClass op : kAllOpClasses) j[std::string(op_class_name(op))] = ops[op];
  return j;
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

// ---- profile ----------------------------------------------------------------

void read_sensing(const Json& j, SensingProfile& s) {
  Reader r(j, "sensing", "");
  if (r.enumeration("mic_kind", s.mic_kind, {MicKind::passive, MicKind::active})) {
    s.v_noise_in_rms = typical_input_noise(s.mic_kind);
  }
  r.quantity("temperature_K", s.temperature_K, Dimension::temperature);
  r.quantity("p_mic_active", s.p_mic_active, Dimension::power);
  r.quantity("v_dd_lna", s.v_dd_lna, Dimension::voltage);
  r.quantity("nef", s.nef, Dimension::dimensionless);
  r.quantity("v_noise_in_rms", s.v_noise_in_rms, Dimension::voltage);
  r.quantity("adc_fom", s.adc_fom, Dimension::energy);
  r.quantity("f_s_mic", s.f_s_mic, Dimension::frequency);
  r.integer("n_adc_bits", s.n_adc_bits);
  r.finish();
}

void read_processing(const Json& j, ProcessingProfile& p) {
  Reader r(j, "processing", "");
  r.enumeration("processor_class", p.processor_class,
                {ProcessorClass::gp_proc, ProcessorClass::gp_dsp});
  r.quantity("energy_per_cycle_gp_proc", p.energy_per_cycle_gp_proc, Dimension::energy);
  r.quantity("energy_per_cycle_gp_dsp", p.energy_per_cycle_gp_dsp, Dimension::energy);
  r.op_counts("op_cycle_costs", p.op_cycle_costs);
  if (const Json* levels = r.find("memory_levels")) {
    if (!levels->is_array()) r.fail("memory_levels", "expected an array of memory levels");
    p.memory_levels.clear();
    for (std::size_t i = 0; i < levels->size(); ++i) {
      Reader lr((*levels)[i], "processing", "memory_levels." + std::to_string(i));
      MemoryLevel level;
      lr.string("name", level.name);
      lr.quantity("access_energy_per_bit", level.access_energy_per_bit, Dimension::energy);
      lr.quantity("leakage_power_per_bit", level.leakage_power_per_bit, Dimension::power);
      lr.integer("capacity_bits", level.capacity_bits, Dimension::bits);
      lr.finish();
      p.memory_levels.push_back(std::move(level));
    }
  }
  r.integer("word_size_bits", p.word_size_bits, Dimension::bits);
  r.finish();
}

void read_comm(const Json& j, CommProfile& c) {
  Reader r(j, "comm", "");
  if (r.enumeration("pa_class", c.pa_class, {PaClass::A, PaClass::B})) {
    const PaParameters pa = pa_class_parameters(c.pa_class);
    c.eta_max = pa.eta_max;
    c.beta = pa.beta;
  }
  r.quantity("e_startup", c.e_startup, Dimension::energy);
  r.quantity("p_filter", c.p_filter, Dimension::power);
  r.quantity("p_mixer", c.p_mixer, Dimension::power);
  r.quantity("p_lna_rx", c.p_lna_rx, Dimension::power);
  r.quantity("p_vga", c.p_vga, Dimension::power);
  r.quantity("p_lo", c.p_lo, Dimension::power);
  if (const Json* d = r.find("dac")) {
    Reader dr(*d, "comm", "dac");
    dr.integer("n_bits", c.dac.n_bits);
    dr.quantity("f_s_dac", c.dac.f_s_dac, Dimension::frequency);
    dr.quantity("v_dd", c.dac.v_dd, Dimension::voltage);
    dr.quantity("i_unit", c.dac.i_unit, Dimension::current);
    dr.quantity("c_parasitic", c.dac.c_parasitic, Dimension::capacitance);
    dr.quantity("beta_correction", c.dac.beta_correction, Dimension::dimensionless);
    dr.finish();
  }
  if (const Json* a = r.find("adc_rx")) {
    Reader ar(*a, "comm", "adc_rx");
    ar.integer("n_bits", c.adc_rx.n_bits);
    ar.quantity("f_s", c.adc_rx.f_s, Dimension::frequency);
    ar.quantity("fom", c.adc_rx.fom, Dimension::energy);
    ar.finish();
  }
  r.quantity("eta_max", c.eta_max, Dimension::dimensionless);
  r.quantity("beta", c.beta, Dimension::dimensionless);
  r.quantity("extra_backoff", c.extra_backoff, Dimension::ratio_db);
  r.quantity("g_t", c.g_t, Dimension::dimensionless);
  r.quantity("g_r", c.g_r, Dimension::dimensionless);
  r.quantity("f_c", c.f_c, Dimension::frequency);
  r.quantity("bandwidth_W", c.bandwidth_W, Dimension::frequency);
  r.quantity("symbol_rate_Rs", c.symbol_rate_Rs, Dimension::symbol_rate);
  r.quantity("noise_figure", c.noise_figure, Dimension::ratio_db);
  r.quantity("link_margin", c.link_margin, Dimension::ratio_db);
  r.quantity("n0", c.n0, Dimension::power_spectral_density);
  r.finish();
}

// ---- scenario ---------------------------------------------------------------

void read_geometry(Reader& r, WindowGeometry& g) {
  r.integer_list("input_dims", g.input_dims);
  r.integer_list("template_dims", g.template_dims);
  r.integer_list("strides", g.strides);
  r.integer_list("padding", g.padding);
}

PipelineBlock read_block(const Json& j, const std::string& prefix) {
  Reader r(j, "pipeline", prefix);
  std::string type;
  r.string("type", type);
  PipelineBlock block;
  if (type == "framing_window") {
    block.spec = FramingWindowBlock{};
  } else if (type == "fft") {
    block.spec = FftBlock{};
  } else if (type == "log_mel") {
    block.spec = LogMelBlock{};
  } else if (type == "dct") {
    block.spec = DctBlock{};
  } else if (type == "fc") {
    FcLayer fc;
    r.integer("n_in", fc.n_in);
    r.integer("n_neurons", fc.n_neurons);
    block.spec = fc;
  } else if (type == "activation") {
    ActivationLayer a;
    r.enumeration("kind", a.kind,
                  {ActivationKind::relu, ActivationKind::logistic, ActivationKind::tanh,
                   ActivationKind::softmax});
    r.integer("n", a.n);
    block.spec = a;
  } else if (type == "conv") {
    ConvLayer c;
    r.integer("n_templates", c.n_templates);
    read_geometry(r, c.geometry);
    block.spec = c;
  } else if (type == "pool") {
    PoolLayer p;
    r.enumeration("mode", p.mode, {PoolMode::max, PoolMode::avg});
    read_geometry(r, p.geometry);
    r.boolean("charge_avg_pool_div", p.charge_avg_pool_div);
    block.spec = p;
  } else if (type == "batchnorm") {
    BatchNormLayer b;
    r.integer("n", b.n);
    block.spec = b;
  } else {
    r.fail("type",
           "expected one of: framing_window, fft, log_mel, dct, fc, activation, conv, pool, "
           "batchnorm");
  }
  r.string("memory_level", block.memory_level);
  BlockScope scope{};
  if (r.enumeration("scope", scope, {BlockScope::frame, BlockScope::window})) block.scope = scope;
  r.finish();
  return block;
}

void read_pipeline(const Json& j, PipelinePlan& plan) {
  Reader r(j, "pipeline", "");
  if (const Json* m = r.find("mfcc")) {
    Reader mr(*m, "pipeline", "mfcc");
    MfccConfig cfg;
    mr.integer("frame_len_samples", cfg.frame_len_samples);
    mr.integer("hop_samples", cfg.hop_samples);
    mr.integer("fft_len", cfg.fft_len);
    mr.integer("n_mel_bands", cfg.n_mel_bands);
    mr.integer("n_cepstra", cfg.n_cepstra);
    mr.integer("word_size_bits", cfg.word_size_bits, Dimension::bits);
    mr.boolean("dct_storage_times_wordsize", cfg.dct_storage_times_wordsize);
    mr.finish();
    plan.mfcc = cfg;
  } else {
    plan.mfcc.reset();
  }
  if (const Json* blocks = r.find("blocks")) {
    if (!blocks->is_array()) r.fail("blocks", "expected an array of blocks");
    plan.blocks.clear();
    for (std::size_t i = 0; i < blocks->size(); ++i) {
      plan.blocks.push_back(read_block((*blocks)[i], "blocks." + std::to_string(i)));
    }
  }
  r.finish();
}

void read_link(const Json& j, LinkConfig& l) {
  Reader r(j, "link", "");
  r.integer("n_tx_antennas", l.n_tx_antennas);
  r.integer("n_rx_antennas", l.n_rx_antennas);
  r.quantity("mux_gain", l.mux_gain, Dimension::dimensionless);
  r.integer("m_ary", l.m_ary);
  r.integer("header_bits", l.header_bits, Dimension::bits);
  r.integer("payload_bits_up", l.payload_bits_up, Dimension::bits);
  r.integer("payload_bits_down", l.payload_bits_down, Dimension::bits);
  r.integer("acq_overhead_bits", l.acq_overhead_bits, Dimension::bits);
  r.integer("other_overhead_bits", l.other_overhead_bits, Dimension::bits);
  r.integer("feedback_bits", l.feedback_bits, Dimension::bits);
  r.quantity("distance_d", l.distance_d, Dimension::length);
  r.quantity("path_loss_alpha", l.path_loss_alpha, Dimension::dimensionless);
  r.quantity("mean_snr", l.mean_snr, Dimension::ratio_db);
  r.integer("max_trials", l.max_trials);
  r.enumeration("fading", l.fading, {Fading::fast, Fading::block});
  r.finish();
}

void read_coding(const Json& j, CodingConfig& c) {
  Reader r(j, "coding", "");
  r.integer("codeword_len", c.codeword_len, Dimension::bits);
  r.integer("correctable_t", c.correctable_t);
  r.quantity("code_rate", c.code_rate, Dimension::dimensionless);
  r.op_counts("enc_ops", c.enc_ops);
  r.op_counts("dec_ops", c.dec_ops);
  r.finish();
}

Json geometry_into(Json j, const WindowGeometry& g) {
  j["input_dims"] = g.input_dims;
  j["template_dims"] = g.template_dims;
  j["strides"] = g.strides;
  j["padding"] = g.padding;
  return j;
}

Json block_json(const PipelineBlock& block) {
  Json j = Json::object();
  j["type"] = std::string(block_kind_name(block.spec));
  if (const auto* fc = std::get_if<FcLayer>(&block.spec)) {
    j["n_in"] = fc->n_in;
    j["n_neurons"] = fc->n_neurons;
  } else if (const auto* a = std::get_if<ActivationLayer>(&block.spec)) {
    j["kind"] = std::string(to_string(a->kind));
    j["n"] = optional_json(a->n);
  } else if (const auto* c = std::get_if<ConvLayer>(&block.spec)) {
    j["n_templates"] = c->n_templates;
    j = geometry_into(std::move(j), c->geometry);
  } else if (const auto* p = std::get_if<PoolLayer>(&block.spec)) {
    j["mode"] = std::string(to_string(p->mode));
    j = geometry_into(std::move(j), p->geometry);
    j["charge_avg_pool_div"] = p->charge_avg_pool_div;
  } else if (const auto* b = std::get_if<BatchNormLayer>(&block.spec)) {
    j["n"] = optional_json(b->n);
  }
  if (!block.memory_level.empty()) j["memory_level"] = block.memory_level;
  if (block.scope) j["scope"] = std::string(to_string(*block.scope));
  return j;
}

// ---- dotted paths -----------------------------------------------------------

std::vector<std::string> split_path(std::string_view dotted) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted.find('.', start);
    parts.emplace_back(dotted.substr(start, dot == std::string_view::npos ? dot : dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

bool is_profile_path(const std::vector<std::string>& parts) {
  return parts.front() == "sensing" || parts.front() == "processing" || parts.front() == "comm";
}

// Pointer to the addressed leaf (nullptr when missing). `parent_key` receives
// the last segment.
template <class DocT>
auto* locate(DocT& doc, const std::vector<std::string>& parts) {
  auto* node = &doc;
  for (const auto& part : parts) {
    if (node->is_object()) {
      auto it = node->find(part);
      if (it == node->end()) return static_cast<decltype(node)>(nullptr);
      node = &*it;
    } else if (node->is_array()) {
      std::size_t index = 0;
      auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), index);
      if (ec != std::errc{} || ptr != part.data() + part.size() || index >= node->size()) {
        return static_cast<decltype(node)>(nullptr);
      }
      node = &(*node)[index];
    } else {
      return static_cast<decltype(node)>(nullptr);
    }
  }
  return node;
}

}  // namespace

HardwareProfile profile_from_json(const Json& doc) {
  HardwareProfile profile = default_profile();
  Reader r(doc, "profile", "");
  if (const Json* s = r.find("sensing")) read_sensing(*s, profile.sensing);
  if (const Json* p = r.find("processing")) read_processing(*p, profile.processing);
  if (const Json* c = r.find("comm")) read_comm(*c, profile.comm);
  r.finish();
  return profile;
}

Scenario scenario_from_json(const Json& doc) {
  Scenario s = default_scenario();
  Reader r(doc, "node", "");
  r.quantity("delta", s.delta, Dimension::time);
  r.quantity("duty_cycle", s.duty_cycle, Dimension::dimensionless);
  r.integer("n_batteries", s.n_batteries);
  r.quantity("battery_capacity", s.battery_capacity, Dimension::energy);
  r.integer("n_tx_bits", s.n_tx_bits, Dimension::bits);
  r.integer("n_rx_bits", s.n_rx_bits, Dimension::bits);
  if (const Json* p = r.find("pipeline")) read_pipeline(*p, s.pipeline);
  if (const Json* l = r.find("link")) read_link(*l, s.link);
  if (const Json* c = r.find("coding")) read_coding(*c, s.coding);
  r.finish();
  return s;
}

Json to_json(const HardwareProfile& profile) {
  const auto& s = profile.sensing;
  Json sensing = {{"mic_kind", std::string(to_string(s.mic_kind))},
                  {"temperature_K", s.temperature_K},
                  {"p_mic_active", s.p_mic_active},
                  {"v_dd_lna", s.v_dd_lna},
                  {"nef", s.nef},
                  {"v_noise_in_rms", s.v_noise_in_rms},
                  {"adc_fom", s.adc_fom},
                  {"f_s_mic", s.f_s_mic},
                  {"n_adc_bits", s.n_adc_bits}};

  const auto& p = profile.processing;
  Json levels = Json::array();
  for (const auto& level : p.memory_levels) {
    levels.push_back({{"name", level.name},
                      {"access_energy_per_bit", level.access_energy_per_bit},
                      {"leakage_power_per_bit", level.leakage_power_per_bit},
                      {"capacity_bits", level.capacity_bits}});
  }
  Json processing = {{"processor_class", std::string(to_string(p.processor_class))},
                     {"energy_per_cycle_gp_proc", p.energy_per_cycle_gp_proc},
                     {"energy_per_cycle_gp_dsp", p.energy_per_cycle_gp_dsp},
                     {"op_cycle_costs", ops_json(p.op_cycle_costs)},
                     {"memory_levels", levels},
                     {"word_size_bits", p.word_size_bits}};

  const auto& c = profile.comm;
  Json comm = {
      {"pa_class", std::string(to_string(c.pa_class))},
      {"e_startup", c.e_startup},
      {"p_filter", c.p_filter},
      {"p_mixer", c.p_mixer},
      {"p_lna_rx", c.p_lna_rx},
      {"p_vga", c.p_vga},
      {"p_lo", c.p_lo},
      {"dac",
       {{"n_bits", c.dac.n_bits},
        {"f_s_dac", c.dac.f_s_dac},
        {"v_dd", c.dac.v_dd},
        {"i_unit", c.dac.i_unit},
        {"c_parasitic", c.dac.c_parasitic},
        {"beta_correction", c.dac.beta_correction}}},
      {"adc_rx", {{"n_bits", c.adc_rx.n_bits}, {"f_s", c.adc_rx.f_s}, {"fom", c.adc_rx.fom}}},
      {"eta_max", c.eta_max},
      {"beta", c.beta},
      {"extra_backoff", ratio_json(c.extra_backoff)},
      {"g_t", c.g_t},
      {"g_r", c.g_r},
      {"f_c", c.f_c},
      {"bandwidth_W", c.bandwidth_W},
      {"symbol_rate_Rs", c.symbol_rate_Rs},
      {"noise_figure", ratio_json(c.noise_figure)},
      {"link_margin", ratio_json(c.link_margin)},
      {"n0", c.n0}};

  return {{"sensing", sensing}, {"processing", processing}, {"comm", comm}};
}

Json to_json(const Scenario& s) {
  Json pipeline = Json::object();
  if (s.pipeline.mfcc) {
    const auto& m = *s.pipeline.mfcc;
    pipeline["mfcc"] = {{"frame_len_samples", m.frame_len_samples},
                        {"hop_samples", m.hop_samples},
                        {"fft_len", m.fft_len},
                        {"n_mel_bands", m.n_mel_bands},
                        {"n_cepstra", m.n_cepstra},
                        {"word_size_bits", m.word_size_bits},
                        {"dct_storage_times_wordsize", m.dct_storage_times_wordsize}};
  } else {
    pipeline["mfcc"] = nullptr;
  }
  pipeline["blocks"] = Json::array();
  for (const auto& block : s.pipeline.blocks) pipeline["blocks"].push_back(block_json(block));

  const auto& l = s.link;
  Json link = {{"n_tx_antennas", l.n_tx_antennas},
               {"n_rx_antennas", l.n_rx_antennas},
               {"mux_gain", l.mux_gain},
               {"m_ary", l.m_ary},
               {"header_bits", l.header_bits},
               {"payload_bits_up", l.payload_bits_up},
               {"payload_bits_down", l.payload_bits_down},
               {"acq_overhead_bits", l.acq_overhead_bits},
               {"other_overhead_bits", l.other_overhead_bits},
               {"feedback_bits", l.feedback_bits},
               {"distance_d", l.distance_d},
               {"path_loss_alpha", l.path_loss_alpha},
               {"mean_snr", ratio_json(l.mean_snr)},
               {"max_trials", l.max_trials},
               {"fading", std::string(to_string(l.fading))}};

  const auto& c = s.coding;
  Json coding = {{"codeword_len", optional_json(c.codeword_len)},
                 {"correctable_t", c.correctable_t},
                 {"code_rate", optional_json(c.code_rate)},
                 {"enc_ops", c.enc_ops ? ops_json(*c.enc_ops) : Json(nullptr)},
                 {"dec_ops", c.dec_ops ? ops_json(*c.dec_ops) : Json(nullptr)}};

  return {{"delta", s.delta},
          {"duty_cycle", s.duty_cycle},
          {"n_batteries", s.n_batteries},
          {"battery_capacity", s.battery_capacity},
          {"n_tx_bits", s.n_tx_bits},
          {"n_rx_bits", s.n_rx_bits},
          {"pipeline", pipeline},
          {"link", link},
          {"coding", coding}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("file", path.string(), "cannot open");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("file", path.string(), e.what());
  }
}

HardwareProfile load_profile(const std::filesystem::path& path) {
  HardwareProfile profile = profile_from_json(read_json_file(path));
  validate(profile);
  return profile;
}

Scenario load_scenario(const std::filesystem::path& path) {
  Scenario scenario = scenario_from_json(read_json_file(path));
  validate(scenario);
  return scenario;
}

Override parse_override(std::string_view text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("cli", "set", "expected key=value, got '" + std::string(text) + "'");
  }
  return {std::string(text.substr(0, eq)), std::string(text.substr(eq + 1))};
}

InputDocs load_inputs(const std::filesystem::path& profile_path,
                      const std::filesystem::path& scenario_path) {
  const HardwareProfile profile =
      profile_path.empty() ? default_profile() : profile_from_json(read_json_file(profile_path));
  const Scenario scenario = scenario_path.empty()
                                ? default_scenario()
                                : scenario_from_json(read_json_file(scenario_path));
  return {to_json(profile), to_json(scenario)};
}

void apply_override(InputDocs& docs, std::string_view dotted, std::string_view value) {
  const auto parts = split_path(dotted);
  Json& doc = is_profile_path(parts) ? docs.profile : docs.scenario;
  Json* leaf = locate(doc, parts);
  if (leaf == nullptr) throw ConfigError("cli", std::string(dotted), "no such parameter");

  Json parsed = Json::parse(value.begin(), value.end(), nullptr, false);
  if (parsed.is_discarded()) parsed = std::string(value);
  *leaf = std::move(parsed);

  // Re-derive class-dependent values: re-parse the owning section with them
  // removed, then serialize it back.
  if (parts.size() == 2 && parts[0] == "comm" && parts[1] == "pa_class") {
    doc["comm"].erase("eta_max");
    doc["comm"].erase("beta");
    doc = to_json(profile_from_json(doc));
  } else if (parts.size() == 2 && parts[0] == "sensing" && parts[1] == "mic_kind") {
    doc["sensing"].erase("v_noise_in_rms");
    doc = to_json(profile_from_json(doc));
  }
}

bool is_numeric_leaf(const InputDocs& docs, std::string_view dotted) {
  const auto parts = split_path(dotted);
  const Json& doc = is_profile_path(parts) ? docs.profile : docs.scenario;
  const Json* leaf = locate(doc, parts);
  if (leaf == nullptr) return false;
  if (leaf->is_number() || leaf->is_null()) return true;
  if (leaf->is_string()) {
    const auto& s = leaf->get_ref<const std::string&>();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && ptr != s.data();
  }
  return false;
}

ModelInputs resolve(const InputDocs& docs) {
  ModelInputs in{profile_from_json(docs.profile), scenario_from_json(docs.scenario)};
  validate(in.profile);
  validate(in.scenario);
  return in;
}

}  // namespace wasnem
