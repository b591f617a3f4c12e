#include <doctest.h>

#include <cstdio>
#include <string>

#include "helpers.hpp"
#include "lipmr/json_util.hpp"

using lipmr::json;
using testutil::run_command;

namespace {

std::string write_file(const std::string& hint, const std::string& text) {
  const std::string path = testutil::temp_path(hint);
  lipmr::write_text_file(path, text);
  return path;
}

std::string blobs_csv(int n, int p, std::uint64_t seed) {
  const lipmr::LabeledDataset data = testutil::separable_dataset(n, p, seed);
  std::string text;
  char buf[64];
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < p; ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g,", data.x(r, c));
      text += buf;
    }
    text += std::to_string(data.y[r]);
    text += "\n";
  }
  return write_file("blobs", text);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help exits 0, parse failures exit 2") {
  const std::string cli = testutil::cli_path();
  const auto help = run_command(cli + " --help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("fit") != std::string::npos);
  CHECK(help.out.find("experiment") != std::string::npos);

  CHECK(run_command(cli).exit_code == 2);
  CHECK(run_command(cli + " fit --bogus 1").exit_code == 2);
  CHECK(run_command(cli + " --variant euclid fit --data x --out y").exit_code == 2);
}

TEST_CASE("fit writes a model and a solver report deterministically") {
  const std::string cli = testutil::cli_path();
  const std::string data = blobs_csv(16, 2, 20000);
  const std::string m1 = testutil::temp_path("model1");
  const std::string m2 = testutil::temp_path("model2");
  const std::string flags = " --seed 1 --max-iter 600 fit --data " + data + " --out ";

  const auto r1 = run_command(cli + flags + m1);
  REQUIRE(r1.exit_code == 0);
  CHECK(r1.out.find("variant=lipd") != std::string::npos);
  CHECK(r1.out.find("lip_constant=") != std::string::npos);

  const json model = lipmr::parse_json_file(m1);
  CHECK(model["format"] == "lipmr.model.v1");
  CHECK(model["metric"]["p"] == 2);
  CHECK(model["anchors"].size() == 16);
  const json report = lipmr::parse_json_file(m1 + ".report.json");
  CHECK(report["format"] == "lipmr.solve_report.v1");
  CHECK(report["variant"] == "lipd");

  const auto r2 = run_command(cli + flags + m2);
  REQUIRE(r2.exit_code == 0);
  CHECK(lipmr::read_text_file(m1) == lipmr::read_text_file(m2));
  CHECK(lipmr::read_text_file(m1 + ".report.json") == lipmr::read_text_file(m2 + ".report.json"));
}

TEST_CASE("fit with variant nn skips the solver") {
  const std::string cli = testutil::cli_path();
  const std::string data = blobs_csv(12, 2, 20100);
  const std::string out = testutil::temp_path("nnmodel");
  const auto res = run_command(cli + " --variant nn fit --data " + data + " --out " + out);
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.find("metric=identity") != std::string::npos);
  CHECK(lipmr::parse_json_file(out)["format"] == "lipmr.model.v1");

  const auto bad = run_command(cli + " --variant nn fit --data " + data + " --out " + out +
                               " --report " + out + ".rep");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("fit maps input failures to exit 2") {
  const std::string cli = testutil::cli_path();
  const std::string out = testutil::temp_path("failmodel");

  const auto missing = run_command(cli + " fit --data /nonexistent.csv --out " + out);
  CHECK(missing.exit_code == 2);
  CHECK(missing.err.find("cannot open file") != std::string::npos);

  const std::string mono = write_file("mono", "1,2,1\n3,4,1\n5,6,1\n");
  const auto single = run_command(cli + " fit --data " + mono + " --out " + out);
  CHECK(single.exit_code == 2);
  CHECK(single.err.find("single class") != std::string::npos);

  const std::string data = blobs_csv(10, 2, 20200);
  const auto alpha = run_command(cli + " fit --data " + data + " --out " + out + " --alpha 1.5");
  CHECK(alpha.exit_code == 2);
}

TEST_CASE("fit honors an explicit Lipschitz constant") {
  const std::string cli = testutil::cli_path();
  const std::string data = blobs_csv(10, 2, 20300);
  const std::string out = testutil::temp_path("lipmodel");
  const auto res =
      run_command(cli + " --max-iter 300 fit --data " + data + " --out " + out + " --lip 2.5");
  REQUIRE(res.exit_code == 0);
  CHECK(lipmr::parse_json_file(out)["lip_constant"] == 2.5);
}

TEST_CASE("hitting the iteration cap warns but exits 0") {
  const std::string cli = testutil::cli_path();
  const std::string data = blobs_csv(12, 2, 20400);
  const std::string out = testutil::temp_path("capmodel");
  const auto res = run_command(cli + " --max-iter 5 fit --data " + data + " --out " + out);
  CHECK(res.exit_code == 0);
  CHECK(res.err.find("warning: solver hit max_iter") != std::string::npos);
  CHECK(lipmr::parse_json_file(out)["format"] == "lipmr.model.v1");
  CHECK(lipmr::parse_json_file(out + ".report.json")["converged"] == false);
}

TEST_CASE("predict scores a saved model") {
  const std::string cli = testutil::cli_path();
  const std::string data = blobs_csv(14, 2, 20500);
  const std::string model = testutil::temp_path("pmodel");
  REQUIRE(run_command(cli + " --seed 2 --max-iter 600 fit --data " + data + " --out " + model)
              .exit_code == 0);

  const auto res = run_command(cli + " predict --model " + model + " --data " + data);
  REQUIRE(res.exit_code == 0);
  const json doc = json::parse(res.out);
  CHECK(doc["format"] == "lipmr.predictions.v1");
  CHECK(doc["n"] == 14);
  CHECK(doc["accuracy"] == 1.0);
  CHECK(doc["ties"] == 0);
  CHECK(doc["labels"].size() == 14);
  CHECK(doc["values"].size() == 14);

  const std::string out = testutil::temp_path("preds");
  const auto filed =
      run_command(cli + " predict --model " + model + " --data " + data + " --out " + out);
  CHECK(filed.exit_code == 0);
  CHECK(filed.out.empty());
  CHECK(lipmr::parse_json_file(out)["accuracy"] == 1.0);

  CHECK(run_command(cli + " predict --model /nope.json --data " + data).exit_code == 2);
}

TEST_CASE("margin-report emits diagnostics and honors subsets") {
  const std::string cli = testutil::cli_path();
  const std::string four = write_file("four", "0,1\n1,1\n2,-1\n3,-1\n");
  const auto res = run_command(cli + " margin-report --data " + four);
  REQUIRE(res.exit_code == 0);
  const json doc = json::parse(res.out);
  CHECK(doc["format"] == "lipmr.margin_report.v1");
  CHECK(doc["margin"] == 1.0);
  CHECK(doc["diam_all"] == 9.0);
  CHECK(doc["ratio_diam"] == 1.0 / 9.0);
  CHECK(doc["l0"] == 2.0);

  const std::string blobs = blobs_csv(16, 2, 20600);
  const auto sub = run_command(cli + " margin-report --data " + blobs + " --subset 0,1,8");
  REQUIRE(sub.exit_code == 0);
  CHECK(json::parse(sub.out)["margin"].get<double>() > 0.0);

  CHECK(run_command(cli + " margin-report --data " + blobs + " --subset 0,1").exit_code == 2);
  CHECK(run_command(cli + " margin-report --data " + blobs + " --subset 0,x").exit_code == 2);
  CHECK(run_command(cli + " margin-report --data " + blobs + " --subset 0,99").exit_code == 2);
}

TEST_CASE("margin-report reads libsvm files") {
  const std::string cli = testutil::cli_path();
  const auto res =
      run_command(cli + " margin-report --data " + testutil::data_dir() + "/fourclass_synth.libsvm");
  REQUIRE(res.exit_code == 0);
  const json doc = json::parse(res.out);
  CHECK(doc["format"] == "lipmr.margin_report.v1");
  CHECK(doc["diam_all"].get<double>() > 0.0);
}

TEST_CASE("experiment emits deterministic json and csv") {
  const std::string cli = testutil::cli_path();
  const std::string data = blobs_csv(16, 2, 20700);
  const std::string j1 = testutil::temp_path("exp1j"), c1 = testutil::temp_path("exp1c");
  const std::string j2 = testutil::temp_path("exp2j"), c2 = testutil::temp_path("exp2c");
  const std::string flags = " --seed 3 --repeats 2 --max-iter 300 experiment --data " + data +
                            " --variants nn,lipd";

  const auto r1 = run_command(cli + flags + " --out-json " + j1 + " --out-csv " + c1);
  REQUIRE(r1.exit_code == 0);
  CHECK(r1.out.find("nn: accuracy") != std::string::npos);
  const auto r2 = run_command(cli + flags + " --out-json " + j2 + " --out-csv " + c2);
  REQUIRE(r2.exit_code == 0);

  CHECK(lipmr::read_text_file(c1) == lipmr::read_text_file(c2));
  CHECK(lipmr::read_text_file(c1).rfind("variant,split,accuracy\n", 0) == 0);

  json d1 = lipmr::parse_json_file(j1);
  json d2 = lipmr::parse_json_file(j2);
  CHECK(d1["format"] == "lipmr.experiment.v1");
  CHECK(d1["split_plan"]["repeats"] == 2);
  CHECK(d1["results"][0]["variant"] == "nn");
  d1.erase("timing_meta");
  d2.erase("timing_meta");
  CHECK(lipmr::dump17(d1) == lipmr::dump17(d2));

  const auto degenerate =
      run_command(cli + " --train-fraction 1.0 experiment --data " + data + " --variants nn");
  CHECK(degenerate.exit_code == 2);
}

TEST_CASE("config file feeds defaults and the command line overrides it") {
  const std::string cli = testutil::cli_path();
  const std::string data = blobs_csv(16, 2, 20800);
  const std::string ini =
      write_file("config", "repeats=2\nseed=9\nmax-iter=250\nno-standardize=true\n");
  const std::string out = testutil::temp_path("cfgexp");

  const auto res = run_command(cli + " --config " + ini + " experiment --data " + data +
                               " --variants nn --out-json " + out);
  REQUIRE(res.exit_code == 0);
  const json doc = lipmr::parse_json_file(out);
  CHECK(doc["split_plan"]["repeats"] == 2);
  CHECK(doc["split_plan"]["seed"] == 9);
  CHECK(doc["solver"]["max_iter"] == 250);
  CHECK(doc["standardize"] == false);

  const auto over = run_command(cli + " --config " + ini + " --repeats 1 experiment --data " +
                                data + " --variants nn --out-json " + out);
  REQUIRE(over.exit_code == 0);
  CHECK(lipmr::parse_json_file(out)["split_plan"]["repeats"] == 1);
}

TEST_CASE("bound evaluates stats directly or from data") {
  const std::string cli = testutil::cli_path();
  const auto manual =
      run_command(cli + " bound --surrogate-c 1 --n 1000000 --k 0");
  REQUIRE(manual.exit_code == 0);
  const json doc = json::parse(manual.out);
  CHECK(doc["format"] == "lipmr.bound.v1");
  CHECK(doc["c_mode"] == "manual");
  CHECK(doc["fat_dim"] == 16.0);
  CHECK(doc["condition_met"] == true);
  CHECK(doc["clamped"].get<double>() ==
        doctest::Approx(0.14468473117522962).epsilon(1e-12));

  const auto vacuous = run_command(cli + " bound --surrogate-c 1 --n 50 --k 50");
  REQUIRE(vacuous.exit_code == 0);
  CHECK(json::parse(vacuous.out)["clamped"] == 1.0);
  CHECK(json::parse(vacuous.out)["vacuous"] == true);

  const std::string data = blobs_csv(16, 2, 20900);
  const auto derived = run_command(cli + " bound --data " + data + " --c-mode intra");
  REQUIRE(derived.exit_code == 0);
  const json ddoc = json::parse(derived.out);
  CHECK(ddoc["c_mode"] == "intra");
  CHECK(ddoc["n"] == 16);
  // The intra surrogate is bounded below by 2 and exceeds it whenever either
  // class has positive diameter.
  CHECK(ddoc["surrogate_c"].get<double>() > 2.0);

  // An unmet sample-size condition is informational, not an error.
  const auto unmet = run_command(cli + " --ddim 8 bound --surrogate-c 1 --n 100");
  REQUIRE(unmet.exit_code == 0);
  CHECK(json::parse(unmet.out)["condition_met"] == false);
  CHECK(json::parse(unmet.out)["clamped"] == 1.0);

  CHECK(run_command(cli + " bound").exit_code == 2);
  CHECK(run_command(cli + " bound --surrogate-c 1").exit_code == 2);
}

TEST_CASE("oracle subcommand solves small instances and rejects big ones") {
  const std::string cli = testutil::cli_path();
  const std::string tiny = blobs_csv(6, 2, 21000);
  const auto res = run_command(cli + " --seed 5 oracle --data " + tiny +
                               " --iterations 2000 --restarts 1");
  REQUIRE(res.exit_code == 0);
  const json doc = json::parse(res.out);
  CHECK(doc["format"] == "lipmr.oracle.v1");
  CHECK(doc["objective"].get<double>() > 0.0);
  CHECK(doc["metric"]["p"] == 2);

  std::string big_text;
  for (int r = 0; r < 41; ++r)
    big_text += std::to_string(r) + "," + std::to_string(r % 3) + "," + (r % 2 ? "1" : "-1") + "\n";
  const std::string big = write_file("big", big_text);
  CHECK(run_command(cli + " oracle --data " + big).exit_code == 2);
}

}  // TEST_SUITE
