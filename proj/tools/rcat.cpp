// Command-line workbench: finite restriction categories, monic systems,
// partial maps, presheaves, and the checks the library provides, one
// subcommand per construction. Exit codes: 0 all checks pass
// (not-applicable counts as pass), 1 a check failed, 2 bad input or usage.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <random>

#include "rcat/cocheck.hpp"
#include "rcat/equiv.hpp"
#include "rcat/fixtures.hpp"
#include "rcat/io.hpp"

namespace fs = std::filesystem;
using namespace rcat;

namespace {

struct Options {
  std::string format = "text";
  unsigned seed = 0;
  int shape_bound = 3;
  int max_family = 0;  // 0 = unlimited
};

CatData load_cat(const std::string& path) {
  return io::cat_from_json(io::read_json_file(path));
}

RestrCat require_restriction(const CatData& d) {
  if (d.restriction.empty())
    throw input_error("this command needs a 'restriction' key");
  return RestrCat(FinCat(d), RestrictionStructure{d.restriction});
}

MSystem require_msystem(const CatData& d) {
  if (d.msystem.empty())
    throw input_error("this command needs a 'msystem' key");
  return MSystem{{d.msystem.begin(), d.msystem.end()}};
}

io::PresheafFile load_presheaf(const std::string& path) {
  auto dir = fs::path(path).parent_path();
  return io::presheaf_from_json(io::read_json_file(path),
                                [&](const std::string& rel) {
                                  return io::read_json_file(
                                      (dir / rel).string());
                                });
}

int emit_reports(std::vector<CheckReport> reports, const Options& opt) {
  std::sort(reports.begin(), reports.end(),
            [](const CheckReport& a, const CheckReport& b) {
              return a.check < b.check;
            });
  if (opt.format == "json") {
    json j;
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    j["reports"] = arr;
    std::cout << io::dump(j);
  } else {
    for (const auto& r : reports) std::cout << r.text();
  }
  for (const auto& r : reports)
    if (!r.passed()) return 1;
  return 0;
}

void emit_artifact(const json& j, const std::string& out) {
  if (out.empty())
    std::cout << io::dump(j);
  else
    io::write_file(out, io::dump(j));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite restriction-category workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", opt.seed, "seed for any sampled family selection");
  app.add_option("--shape-bound", opt.shape_bound,
                 "largest discrete shape quantified in colimit checks")
      ->check(CLI::Range(1, 4));

  std::string file, out, object_id, manifest;

  auto* c_check = app.add_subcommand("check", "validate a category file");
  c_check->add_option("file", file)->required();

  auto* c_kr = app.add_subcommand(
      "kr", "split the restriction idempotents of a category");
  c_kr->add_option("file", file)->required();
  c_kr->add_option("-o,--output", out);

  auto* c_par = app.add_subcommand("par",
                                   "partial-map category of a monic system");
  c_par->add_option("file", file)->required();
  c_par->add_option("-o,--output", out);

  auto* c_mtotal = app.add_subcommand(
      "mtotal", "total maps with restriction monics as monic system");
  c_mtotal->add_option("file", file)->required();
  c_mtotal->add_option("-o,--output", out);

  auto* c_total = app.add_subcommand("total", "subcategory of total maps");
  c_total->add_option("file", file)->required();
  c_total->add_option("-o,--output", out);

  auto* c_msys = app.add_subcommand("msystem-check",
                                    "validate a stable system of monics");
  c_msys->add_option("file", file)->required();

  auto* c_psh = app.add_subcommand("psh-check", "validate a presheaf file");
  c_psh->add_option("file", file)->required();

  auto* c_rpsh = app.add_subcommand("rpsh-check",
                                    "validate a restriction presheaf file");
  c_rpsh->add_option("file", file)->required();

  auto* c_yon = app.add_subcommand("yoneda", "emit a representable presheaf");
  c_yon->add_option("file", file)->required();
  c_yon->add_option("-A,--object", object_id, "representing object")
      ->required();
  c_yon->add_option("-o,--output", out);

  auto* c_cls = app.add_subcommand(
      "classifier", "subobject classifier over the monic system");
  c_cls->add_option("file", file)->required();
  c_cls->add_option("-o,--output", out);

  auto* c_cocheck = app.add_subcommand(
      "cocheck", "finite-scale cocompleteness diagnostics");
  c_cocheck->add_option("file", file)->required();

  auto* c_ext = app.add_subcommand("extensive", "M-extensivity check");
  c_ext->add_option("file", file)->required();

  auto* c_equiv = app.add_subcommand(
      "equiv-verify", "presheaf/partial-map equivalence witness");
  c_equiv->add_option("file", file)->required();
  c_equiv->add_option("manifest", manifest,
                      "optional JSON manifest {\"presheaves\": [paths]}");
  c_equiv->add_option("-o,--output", out, "write the witness log here");
  c_equiv->add_option("--max-family", opt.max_family,
                      "cap the generated family size (seeded subsample)");

  auto* c_cl = app.add_subcommand("cl-check",
                                  "embedding-triangle check for a "
                                  "restriction category");
  c_cl->add_option("file", file)->required();

  std::string emit_dir;
  auto* c_fix = app.add_subcommand("fixtures", "list bundled fixtures");
  c_fix->add_option("--emit", emit_dir, "write fixture files to a directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e);
      return 0;
    }
    std::cerr << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*c_check) {
      auto d = load_cat(file);
      FinCat C(d);
      std::vector<CheckReport> reports{check_category(C)};
      if (!d.restriction.empty())
        reports.push_back(check_restriction_structure(
            C, RestrictionStructure{d.restriction}));
      if (!d.msystem.empty())
        reports.push_back(check_msystem(
            C, MSystem{{d.msystem.begin(), d.msystem.end()}}));
      return emit_reports(std::move(reports), opt);
    }
    if (*c_kr) {
      auto X = require_restriction(load_cat(file));
      emit_artifact(io::cat_to_json(io::kr_to_catdata(kr(X))), out);
      return 0;
    }
    if (*c_par) {
      auto d = load_cat(file);
      FinCat C(d);
      emit_artifact(
          io::cat_to_json(io::par_to_catdata(par(C, require_msystem(d)))),
          out);
      return 0;
    }
    if (*c_mtotal) {
      auto X = require_restriction(load_cat(file));
      emit_artifact(io::cat_to_json(io::mtotal_to_catdata(mtotal(X))), out);
      return 0;
    }
    if (*c_total) {
      auto X = require_restriction(load_cat(file));
      emit_artifact(io::cat_to_json(total_subcategory(X).data()), out);
      return 0;
    }
    if (*c_msys) {
      auto d = load_cat(file);
      FinCat C(d);
      return emit_reports({check_msystem(C, require_msystem(d))}, opt);
    }
    if (*c_psh) {
      auto pf = load_presheaf(file);
      FinCat C(pf.base);
      return emit_reports({check_presheaf(C, pf.psh)}, opt);
    }
    if (*c_rpsh) {
      auto pf = load_presheaf(file);
      if (!pf.has_restriction)
        throw input_error("restriction presheaf file needs a 'restriction' "
                          "key");
      auto X = require_restriction(pf.base);
      return emit_reports(
          {check_restriction_presheaf(X, {pf.psh, pf.elbar})}, opt);
    }
    if (*c_yon) {
      auto d = load_cat(file);
      json base = io::cat_to_json(d);
      if (!d.restriction.empty()) {
        auto X = require_restriction(d);
        auto yr = yoneda_r(X, X.cat().obj_index(object_id));
        emit_artifact(io::presheaf_to_json(base, yr.psh, &yr.elbar), out);
      } else {
        FinCat C(d);
        auto y = yoneda(C, C.obj_index(object_id));
        emit_artifact(io::presheaf_to_json(base, y, nullptr), out);
      }
      return 0;
    }
    if (*c_cls) {
      auto d = load_cat(file);
      FinCat C(d);
      auto M = require_msystem(d);
      auto cls = sigma_classifier(C, M, representable_family(C, 3));
      if (!out.empty()) {
        json j;
        j["sigma"] =
            io::presheaf_to_json(io::cat_to_json(d), cls.sigma, nullptr);
        j["tau"] = io::psh_map_to_json(cls.tau);
        j["report"] = cls.report.to_json();
        io::write_file(out, io::dump(j));
      }
      return emit_reports({cls.report}, opt);
    }
    if (*c_cocheck) {
      auto d = load_cat(file);
      FinCat C(d);
      return emit_reports(
          {check_cocompleteness_conditions(C, require_msystem(d),
                                           opt.shape_bound)},
          opt);
    }
    if (*c_ext) {
      auto d = load_cat(file);
      FinCat C(d);
      return emit_reports(
          {check_m_extensive(C, require_msystem(d), opt.shape_bound)}, opt);
    }
    if (*c_equiv) {
      auto d = load_cat(file);
      FinCat C(d);
      auto M = require_msystem(d);
      auto P = par(C, M);
      std::vector<std::pair<std::string, Presheaf>> base_family;
      if (manifest.empty()) {
        for (int A = 0; A < C.n_objs(); ++A) {
          auto y = yoneda(C, A);
          base_family.emplace_back("y(" + C.obj(A) + ")", y);
          int k = 0;
          for (const auto& S : subfunctors(C, y))
            base_family.emplace_back(
                "sub" + std::to_string(k++) + ":y(" + C.obj(A) + ")",
                sub_presheaf(C, y, S));
        }
      } else {
        auto mj = io::read_json_file(manifest);
        io::reject_unknown_keys(mj, {"presheaves"}, "family manifest");
        auto dir = fs::path(manifest).parent_path();
        for (const auto& p : mj.at("presheaves")) {
          auto path = (dir / p.get<std::string>()).string();
          auto pf = load_presheaf(path);
          if (FinCat(pf.base).data() != C.data())
            throw input_error("family presheaf over a different base: " +
                              path);
          base_family.emplace_back(p.get<std::string>(), pf.psh);
        }
      }
      if (opt.max_family > 0 && (int)base_family.size() > opt.max_family) {
        std::mt19937 rng(opt.seed);
        std::shuffle(base_family.begin(), base_family.end(), rng);
        base_family.resize(opt.max_family);
        std::sort(base_family.begin(), base_family.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
      }
      std::vector<std::pair<std::string, RestrictionPresheaf>> par_family;
      for (int A = 0; A < C.n_objs(); ++A)
        par_family.emplace_back(
            "y_r(" + C.obj(A) + ")",
            yoneda_r(P.rc, P.rc.cat().obj_index(C.obj(A))));
      for (int A = 0; A < C.n_objs(); ++A)
        par_family.emplace_back("F(y(" + C.obj(A) + "))",
                                functor_F(P, yoneda(C, A)).rp);
      auto w = verify_equivalence(P, base_family, par_family);
      if (!out.empty()) {
        json j;
        j["report"] = w.report.to_json();
        j["log"] = w.log;
        io::write_file(out, io::dump(j));
      }
      return emit_reports({w.report}, opt);
    }
    if (*c_cl) {
      auto X = require_restriction(load_cat(file));
      return emit_reports({cockett_lack_check(X)}, opt);
    }
    if (*c_fix) {
      json arr = json::array();
      for (const auto& fx : fixtures::all()) {
        arr.push_back(json{{"name", fx.name},
                           {"path", "fixtures/" + fx.name + ".json"},
                           {"provenance", fx.provenance}});
        if (!emit_dir.empty())
          io::write_file((fs::path(emit_dir) / (fx.name + ".json")).string(),
                         io::dump(io::cat_to_json(fx.data)));
      }
      std::cout << io::dump(json{{"fixtures", arr}});
      return 0;
    }
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const internal_error& e) {
    std::cerr << "internal error (please report): " << e.what() << "\n";
    return 2;
  }
  return 2;
}
