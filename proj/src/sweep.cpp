#include "hsat/sweep.hpp"

#include <array>
#include <atomic>
#include <charconv>
#include <map>
#include <thread>

#include "hsat/random.hpp"

namespace hsat {

SolverVariant parse_variant(std::string_view text) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (b == std::string_view::npos)
    throw InputError("solver variant must look like formulation:alpha:optimizer");
  SolverVariant v;
  auto f = parse_formulation(text.substr(0, a));
  auto o = parse_optimizer(text.substr(b + 1));
  if (!f || !o)
    throw InputError("unknown formulation or optimizer in '" + std::string(text) + "'");
  const auto alpha_text = text.substr(a + 1, b - a - 1);
  auto [ptr, ec] = std::from_chars(alpha_text.data(), alpha_text.data() + alpha_text.size(), v.alpha);
  if (ec != std::errc() || ptr != alpha_text.data() + alpha_text.size())
    throw InputError("malformed alpha in '" + std::string(text) + "'");
  v.formulation = *f;
  v.optimizer = *o;
  return v;
}

namespace {

SolveConfig cell_config(const SweepSpec &spec, const SolverVariant &v, std::uint64_t seed) {
  SolveConfig cfg = spec.base;
  cfg.formulation = v.formulation;
  cfg.alpha = v.alpha;
  cfg.optimizer.kind = v.optimizer;
  cfg.seed = seed;
  cfg.threads = 1;
  return cfg;
}

BenchSpec bench_for(const SweepSpec &spec, std::size_t grid_index) {
  BenchSpec b;
  b.family = spec.family;
  b.n = spec.n;
  b.ratio = spec.grid[grid_index].ratio;
  b.r_p = spec.grid[grid_index].r_p;
  b.r_v = spec.grid[grid_index].r_v;
  b.count = spec.instances;
  b.seed = derive_seed(spec.seed, grid_index);
  return b;
}

} // namespace

void SweepSpec::validate() const {
  if (grid.empty() || variants.empty() || instances == 0)
    throw InputError("sweep grid, variant list and instance count must be non-empty");
  for (const auto &v : variants)
    cell_config(*this, v, 0).validate();
}

std::vector<SweepRow> run_sweep(const SweepSpec &spec) {
  spec.validate();
  const std::size_t per_grid = spec.variants.size() * spec.instances;
  const std::size_t cells = spec.grid.size() * per_grid;
  std::vector<SweepRow> rows(cells);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    while (true) {
      const auto idx = next.fetch_add(1);
      if (idx >= cells)
        return;
      SweepRow &row = rows[idx];
      row.grid_index = idx / per_grid;
      row.variant_index = (idx % per_grid) / spec.instances;
      row.instance = static_cast<std::uint32_t>(idx % spec.instances);
      row.family = spec.family;
      row.n = spec.n;
      row.point = spec.grid[row.grid_index];
      row.variant = spec.variants[row.variant_index];
      row.seed = spec.seed + row.instance;
      const auto start = std::chrono::steady_clock::now();
      try {
        const auto formula = generate(bench_for(spec, row.grid_index), row.instance);
        const auto result = solve(formula, cell_config(spec, row.variant, row.seed));
        row.solved = result.status == SolveStatus::Sat;
        row.violated = result.violated;
        row.iters = result.iters_total;
      } catch (const std::exception &e) {
        row.solved = false;
        row.violated.reset();
        row.note = e.what();
      }
      if (spec.record_time)
        row.wall_ms = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                                     std::chrono::steady_clock::now() - start)
                                                     .count());
    }
  };

  const unsigned threads = std::max(1u, spec.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back(worker);
  }
  return rows;
}

std::vector<SummaryRow> aggregate(const std::vector<SweepRow> &rows) {
  std::map<std::pair<std::size_t, std::size_t>, SummaryRow> groups;
  for (const auto &r : rows) {
    auto [it, inserted] = groups.try_emplace({r.grid_index, r.variant_index});
    auto &s = it->second;
    if (inserted) {
      s.family = r.family;
      s.n = r.n;
      s.point = r.point;
      s.variant = r.variant;
    }
    ++s.instances;
    s.solved += r.solved ? 1 : 0;
  }
  std::vector<SummaryRow> out;
  out.reserve(groups.size());
  for (auto &[key, s] : groups)
    out.push_back(s);
  return out;
}

std::string format_real(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 6);
  if (ec != std::errc())
    return "nan";
  return std::string(buf.data(), ptr);
}

namespace {

std::string grid_columns(BenchFamily family, std::uint32_t n, const GridPoint &p) {
  std::string s = std::string(to_string(family)) + "," + std::to_string(n) + ",";
  if (family == BenchFamily::Card)
    s += "," + format_real(p.r_p) + "," + format_real(p.r_v);
  else
    s += format_real(p.ratio) + ",,";
  return s;
}

std::string variant_columns(const SolverVariant &v) {
  return std::string(to_string(v.formulation)) + "," + format_real(v.alpha) + "," + to_string(v.optimizer);
}

// Notes are free text; keep the CSV one record per line.
std::string csv_quote(const std::string &s) {
  if (s.empty())
    return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"')
      out += "\"\"";
    else if (ch == '\n' || ch == '\r')
      out += ' ';
    else
      out += ch;
  }
  return out + "\"";
}

} // namespace

std::string rows_to_csv(const std::vector<SweepRow> &rows) {
  std::string out = "family,n,ratio,r_p,r_v,formulation,alpha,optimizer,seed,solved,violated,iters,wall_ms,note\n";
  for (const auto &r : rows) {
    out += grid_columns(r.family, r.n, r.point);
    out += ',';
    out += variant_columns(r.variant);
    out += ',' + std::to_string(r.seed);
    out += r.solved ? ",1," : ",0,";
    if (r.violated)
      out += std::to_string(*r.violated);
    out += ',' + std::to_string(r.iters);
    out += ',' + std::to_string(r.wall_ms);
    out += ',' + csv_quote(r.note);
    out += '\n';
  }
  return out;
}

std::string summary_to_csv(const std::vector<SummaryRow> &rows) {
  std::string out = "family,n,ratio,r_p,r_v,formulation,alpha,optimizer,instances,solved,solved_fraction\n";
  for (const auto &s : rows) {
    out += grid_columns(s.family, s.n, s.point);
    out += ',';
    out += variant_columns(s.variant);
    out += ',' + std::to_string(s.instances);
    out += ',' + std::to_string(s.solved);
    out += ',' + format_real(s.solved_fraction());
    out += '\n';
  }
  return out;
}

} // namespace hsat
