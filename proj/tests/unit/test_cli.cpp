#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "sogdd/csv.hpp"
#include "sogdd/pgm.hpp"
#include "test_support.hpp"

using sogdd::testing::TempDir;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunResult run(const TempDir& dir, const std::string& args) {
  const auto log = dir / "stdout.txt";
  const std::string cmd = std::string("\"") + SOGDD_CLI_PATH + "\" " + args + " > \"" +
                          log.string() + "\" 2> \"" + (dir / "stderr.txt").string() + "\"";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(log);
  return r;
}

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::string q(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST(Cli, DetectConstantImageWritesHeaderOnly) {
  TempDir dir("cli");
  sogdd::save_pgm(sogdd::GrayImage(40, 40, 80.0), dir / "flat.pgm");
  const auto r = run(dir, "detect " + q(dir / "flat.pgm") + " --out " + q(dir / "c.csv"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(slurp(dir / "c.csv"), "x,y,score\n");
  EXPECT_NE(r.out.find("corners: 0"), std::string::npos);
}

TEST(Cli, DetectBlockImageFourRows) {
  TempDir dir("cli");
  sogdd::save_pgm(sogdd::testing::block_image(), dir / "block.pgm");
  const auto r = run(dir, "detect " + q(dir / "block.pgm") + " --out " + q(dir / "c.csv"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(line_count(slurp(dir / "c.csv")), 5u);
}

TEST(Cli, MissingImageIsIoError) {
  TempDir dir("cli");
  EXPECT_EQ(run(dir, "detect " + q(dir / "nope.pgm") + " --out " + q(dir / "c.csv")).code, 2);
}

TEST(Cli, InvalidParametersExitOne) {
  TempDir dir("cli");
  sogdd::save_pgm(sogdd::testing::block_image(), dir / "block.pgm");
  EXPECT_EQ(run(dir, "detect " + q(dir / "block.pgm") + " --sigma2 0.5 --out " + q(dir / "c.csv")).code, 1);
  EXPECT_EQ(run(dir, "detect " + q(dir / "block.pgm") + " --block 4 --out " + q(dir / "c.csv")).code, 1);
  EXPECT_EQ(run(dir, "no-such-command").code, 1);
}

TEST(Cli, ModelVerifyReferenceProfiles) {
  TempDir dir("cli");
  auto r = run(dir, "model-verify --model end --t1 50 --t2 100 --alpha pi/8 --beta pi/3 --d 3 "
                    "--sigma 1.12 --out " + q(dir / "end.csv"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(line_count(slurp(dir / "end.csv")), 361u);
  EXPECT_EQ(slurp(dir / "end.csv").substr(0, 38), "theta_rad,psi_closed,psi_quadrature\n0.");

  r = run(dir, "model-verify --model l --t1 50 --t2 100 --alpha pi/8 --d 3 --sigma 1.15 --out " +
                   q(dir / "l.csv"));
  EXPECT_EQ(r.code, 0);
}

TEST(Cli, ModelVerifyZeroContrast) {
  TempDir dir("cli");
  const auto r = run(dir, "model-verify --t1 70 --t2 70 --out " + q(dir / "z.csv"));
  EXPECT_EQ(r.code, 0);
  const auto table = sogdd::read_csv(dir / "z.csv");
  for (const auto& row : table.rows) {
    EXPECT_EQ(sogdd::parse_real(row[1]), 0.0);
  }
}

TEST(Cli, ModelVerifyUncorrectedFormFailsVerification) {
  TempDir dir("cli");
  const auto r = run(dir, "model-verify --form uncorrected --out " + q(dir / "u.csv"));
  EXPECT_EQ(r.code, 3);
}

TEST(Cli, ScaleRangeWritesCurve) {
  TempDir dir("cli");
  const auto r = run(dir, "scale-range --model end --d 3 --sigma-min 0.5 --sigma-max 3 --out " +
                              q(dir / "e.csv"));
  EXPECT_EQ(r.code, 0);
  const std::string csv = slurp(dir / "e.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "sigma,energy_corner,energy_edge,diff");
  EXPECT_EQ(line_count(csv), 252u);
}

TEST(Cli, EvalGtIdentityFixture) {
  TempDir dir("cli");
  std::ofstream(dir / "gt.csv") << "x,y\n10,12\n30,40\n";
  std::ofstream(dir / "det.csv") << "x,y,score\n10,12,5.0\n30,40,4.0\n";
  const auto r = run(dir, "eval-gt --gt " + q(dir / "gt.csv") + " --detections " + q(dir / "det.csv") +
                              " --out " + q(dir / "r.csv"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(slurp(dir / "r.csv"), "missed,false,Le\n0,0,0.0\n");
}

TEST(Cli, EvalGtMissingFile) {
  TempDir dir("cli");
  std::ofstream(dir / "det.csv") << "x,y,score\n";
  EXPECT_EQ(run(dir, "eval-gt --gt " + q(dir / "none.csv") + " --detections " + q(dir / "det.csv") +
                         " --out " + q(dir / "r.csv"))
                .code,
            2);
}

TEST(Cli, EvalRepeatRotationHasEighteenRows) {
  TempDir dir("cli");
  sogdd::save_pgm(sogdd::testing::block_image(60, 15, 45), dir / "b.pgm");
  const auto r = run(dir, "eval-repeat " + q(dir / "b.pgm") + " --suite rotation --out " + q(dir / "r.csv"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(line_count(slurp(dir / "r.csv")), 19u);
  EXPECT_EQ(run(dir, "eval-repeat " + q(dir / "b.pgm") + " --suite blur --out " + q(dir / "r.csv")).code, 1);
}

TEST(Cli, WarpAndMmaRoundTrip) {
  TempDir dir("cli");
  sogdd::save_pgm(sogdd::testing::random_shapes(64, 64, 3), dir / "a.pgm");
  auto r = run(dir, "warp " + q(dir / "a.pgm") + " --transform rotation --angle pi/2 --out " +
                        q(dir / "b.pgm") + " --homography-out " + q(dir / "h.txt"));
  ASSERT_EQ(r.code, 0);
  r = run(dir, "eval-mma " + q(dir / "a.pgm") + " " + q(dir / "b.pgm") + " --threshold 1000 --homography " +
                   q(dir / "h.txt") + " --out " + q(dir / "m.csv"));
  EXPECT_EQ(r.code, 0);
  const std::string csv = slurp(dir / "m.csv");
  EXPECT_EQ(line_count(csv), 11u);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "Pth,Npossible,Nmatch,MMA");
}

TEST(Cli, ExportKernels) {
  TempDir dir("cli");
  ASSERT_EQ(run(dir, "export-kernels --out " + q(dir / "k.csv")).code, 0);
  // 8 kernels of 13 x 13 taps plus the header.
  EXPECT_EQ(line_count(slurp(dir / "k.csv")), 8u * 169u + 1u);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  TempDir dir("cli");
  sogdd::save_pgm(sogdd::testing::block_image(), dir / "block.pgm");
  std::ofstream(dir / "run.cfg") << "# tuned for the block image\nthreshold=1e30\n";
  auto r = run(dir, "detect " + q(dir / "block.pgm") + " --config " + q(dir / "run.cfg") + " --out " +
                        q(dir / "c.csv"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(line_count(slurp(dir / "c.csv")), 1u);
  r = run(dir, "detect " + q(dir / "block.pgm") + " --config " + q(dir / "run.cfg") +
                   " --threshold 1e9 --out " + q(dir / "c.csv"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(line_count(slurp(dir / "c.csv")), 5u);

  std::ofstream(dir / "bad.cfg") << "[section]\nthreshold=1\n";
  EXPECT_EQ(run(dir, "detect " + q(dir / "block.pgm") + " --config " + q(dir / "bad.cfg") + " --out " +
                         q(dir / "c.csv"))
                .code,
            2);
  EXPECT_EQ(run(dir, "detect " + q(dir / "block.pgm") + " --config " + q(dir / "missing.cfg") +
                         " --out " + q(dir / "c.csv"))
                .code,
            2);
}

TEST(Cli, ThreadsFlagDoesNotChangeBytes) {
  TempDir dir("cli");
  sogdd::save_pgm(sogdd::testing::random_shapes(70, 60, 8), dir / "s.pgm");
  ASSERT_EQ(run(dir, "--threads 1 detect " + q(dir / "s.pgm") + " --threshold 0 --out " + q(dir / "a.csv")).code, 0);
  ASSERT_EQ(run(dir, "detect " + q(dir / "s.pgm") + " --threshold 0 --threads 4 --out " + q(dir / "b.csv")).code, 0);
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
}
