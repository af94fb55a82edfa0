#include "cesurf/preprocess.hpp"

#include <gtest/gtest.h>

#include <random>

#include "cesurf/error.hpp"
#include "cesurf/parallel.hpp"
#include "test_support.hpp"

namespace {

using namespace cesurf;
namespace ct = cesurf::testing;

// ---- Lanczos kernel ------------------------------------------------------

TEST(LanczosKernel, KnotValues) {
  EXPECT_EQ(lanczos_kernel(0.0), 1.0);
  for (double x : {1.0, 2.0, 3.0, -1.0, -2.0, -3.0, 3.5, -7.0}) {
    EXPECT_NEAR(lanczos_kernel(x), 0.0, 1e-12) << x;
  }
  // sinc(1/2) sinc(1/6) = (2/pi)(3/pi) = 6 / pi^2.
  EXPECT_NEAR(lanczos_kernel(0.5), 0.6079271018540267, 1e-12);
  EXPECT_NEAR(lanczos_kernel(0.5), 0.60793, 5e-6);
}

TEST(LanczosKernel, EvenAndMatchesOracle) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> d(-4.0, 4.0);
  for (int i = 0; i < 5000; ++i) {
    const double x = d(rng);
    EXPECT_EQ(lanczos_kernel(x), lanczos_kernel(-x));
    EXPECT_NEAR(lanczos_kernel(x), ct::oracle_lanczos3(x), 1e-14);
    if (std::abs(x) >= 3.0) EXPECT_EQ(lanczos_kernel(x), 0.0);
  }
}

// ---- Lanczos upscale -----------------------------------------------------

TEST(LanczosUpscale, ConstantImageStaysConstant) {
  const GrayImage src(9, 7, 128.0);
  const GrayImage up = lanczos_upscale(src, 2);
  ASSERT_EQ(up.width(), 18);
  ASSERT_EQ(up.height(), 14);
  for (double v : up.values()) EXPECT_NEAR(v, 128.0, 1e-9);

  const RasterImage rgb(5, 5, Rgb{128, 128, 128});
  const RasterImage rup = lanczos_upscale(rgb, 3);
  EXPECT_EQ(rup, RasterImage(15, 15, Rgb{128, 128, 128}));
}

TEST(LanczosUpscale, DimensionsScaleByRatio) {
  const GrayImage up = lanczos_upscale(GrayImage(360, 360, 10.0), 2);
  EXPECT_EQ(up.width(), 720);
  EXPECT_EQ(up.height(), 720);
  EXPECT_EQ(lanczos_upscale(GrayImage(3, 2, 1.0), 1), GrayImage(3, 2, 1.0));
}

TEST(LanczosUpscale, ZeroRatioIsInvalidArgument) {
  try {
    lanczos_upscale(GrayImage(2, 2), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  EXPECT_THROW(lanczos_upscale(RasterImage(2, 2), -1), Error);
}

TEST(LanczosUpscale, RampMatchesBruteForce) {
  std::vector<double> ramp(8);
  for (int i = 0; i < 8; ++i) ramp[i] = 10.0 * i;
  const GrayImage src(8, 1, ramp);
  const GrayImage up = lanczos_upscale(src, 2);
  ASSERT_EQ(up.width(), 16);
  ASSERT_EQ(up.height(), 2);
  for (int y = 0; y < up.height(); ++y) {
    for (int x = 0; x < up.width(); ++x) {
      EXPECT_NEAR(up.at(x, y), ct::oracle_lanczos_sample(src, 2, x, y), 1e-9);
    }
  }
}

TEST(LanczosUpscale, RandomMatchesBruteForceAcrossRatios) {
  std::mt19937 rng(99);
  for (int ratio : {1, 2, 3, 4}) {
    const GrayImage src = ct::random_gray(rng, 11, 9);
    const GrayImage up = lanczos_upscale(src, ratio);
    for (int y = 0; y < up.height(); ++y) {
      for (int x = 0; x < up.width(); ++x) {
        ASSERT_NEAR(up.at(x, y), ct::oracle_lanczos_sample(src, ratio, x, y), 1e-9)
            << "ratio " << ratio << " at " << x << "," << y;
      }
    }
  }
}

TEST(LanczosUpscale, CommutesWithIntensityShift) {
  std::mt19937 rng(4);
  const GrayImage a = ct::random_gray(rng, 10, 10);
  GrayImage b = a;
  for (double& v : b.values()) v += 37.5;
  const GrayImage ua = lanczos_upscale(a, 2);
  const GrayImage ub = lanczos_upscale(b, 2);
  for (std::size_t i = 0; i < ua.values().size(); ++i) {
    EXPECT_NEAR(ub.values()[i], ua.values()[i] + 37.5, 1e-9);
  }
}

TEST(LanczosUpscale, ColorChannelsIndependent) {
  std::mt19937 rng(8);
  const RasterImage src = ct::random_raster(rng, 7, 6);
  const RasterImage up = lanczos_upscale(src, 2);
  for (int c = 0; c < 3; ++c) {
    std::vector<double> plane;
    for (int y = 0; y < src.height(); ++y) {
      for (int x = 0; x < src.width(); ++x) plane.push_back(src.channel(x, y, c));
    }
    const GrayImage g(7, 6, plane);
    for (int y = 0; y < up.height(); ++y) {
      for (int x = 0; x < up.width(); ++x) {
        const double expect = std::clamp(std::round(ct::oracle_lanczos_sample(g, 2, x, y)), 0.0, 255.0);
        ASSERT_EQ(up.channel(x, y, c), expect);
      }
    }
  }
}

// ---- statistics and rescaling -------------------------------------------

TEST(Stats, SmallVectors) {
  auto stats = [](std::vector<double> v) {
    const int n = static_cast<int>(v.size());
    return compute_stats(GrayImage(n, 1, std::move(v)));
  };
  StatsSummary s = stats({5, 5, 5});
  EXPECT_EQ(s.mean, 5.0);
  EXPECT_EQ(s.std, 0.0);
  EXPECT_EQ(s.count, 3u);

  s = stats({1, 2, 3});
  EXPECT_DOUBLE_EQ(s.mean, 2.0);
  EXPECT_NEAR(s.std, std::sqrt(2.0 / 3.0), 1e-15);
  EXPECT_NEAR(s.std, 0.81650, 5e-6);

  s = stats({0, 255});
  EXPECT_DOUBLE_EQ(s.mean, 127.5);
  EXPECT_DOUBLE_EQ(s.std, 127.5);
}

TEST(Stats, ShiftInvariance) {
  std::mt19937 rng(12);
  for (int t = 0; t < 50; ++t) {
    const GrayImage a = ct::random_gray(rng, 9, 4);
    GrayImage b = a;
    const double c = std::uniform_real_distribution<double>(-100, 100)(rng);
    for (double& v : b.values()) v += c;
    const StatsSummary sa = compute_stats(a);
    const StatsSummary sb = compute_stats(b);
    EXPECT_NEAR(sb.mean, sa.mean + c, 1e-9);
    EXPECT_NEAR(sb.std, sa.std, 1e-9);
    const auto [lo, hi] = std::minmax_element(a.values().begin(), a.values().end());
    EXPECT_GE(sa.mean, *lo);
    EXPECT_LE(sa.mean, *hi);
  }
}

TEST(Rescale, ConstantImageUnchanged) {
  const GrayImage img(4, 4, 42.0);
  for (double k : {0.5, 1.0, 2.0, 10.0}) EXPECT_EQ(rescale_outliers(img, k), img);
}

TEST(Rescale, BoundsMapToEndpoints) {
  // mean 2, std sqrt(2/3); with k = sqrt(3/2) the bounds are exactly 1 and 3.
  const GrayImage img(3, 1, std::vector<double>{1.0, 2.0, 3.0});
  const GrayImage out = rescale_outliers(img, std::sqrt(1.5));
  EXPECT_NEAR(out.at(0, 0), 0.0, 1e-9);
  EXPECT_NEAR(out.at(1, 0), 127.5, 1e-9);
  EXPECT_NEAR(out.at(2, 0), 255.0, 1e-9);

  const RescaleBounds b = rescale_bounds(compute_stats(img), 2.0);
  EXPECT_NEAR(b.lower, 2.0 - 2.0 * std::sqrt(2.0 / 3.0), 1e-12);
  EXPECT_NEAR(b.upper, 2.0 + 2.0 * std::sqrt(2.0 / 3.0), 1e-12);
  EXPECT_LE(b.lower, b.upper);
}

TEST(Rescale, RandomMatchesClampAffineOracle) {
  std::mt19937 rng(21);
  const GrayImage img = ct::random_gray(rng, 8, 8);
  const GrayImage out = rescale_outliers(img, 2.0);
  const std::vector<double> expect =
      ct::oracle_rescale({img.values().begin(), img.values().end()}, 2.0);
  for (std::size_t i = 0; i < expect.size(); ++i) {
    EXPECT_NEAR(out.values()[i], expect[i], 1e-9);
  }
}

TEST(Rescale, RejectsNonPositiveK) {
  EXPECT_THROW(rescale_outliers(GrayImage(2, 2), 0.0), Error);
  EXPECT_THROW(rescale_outliers(GrayImage(2, 2), -1.0), Error);
}

// ---- convolution ---------------------------------------------------------

TEST(Convolve, DeltaKernelIsIdentity) {
  std::mt19937 rng(2);
  const GrayImage img = ct::random_gray(rng, 6, 5);
  EXPECT_EQ(convolve2d(img, Kernel3x3::identity()), img);
  const RasterImage rgb = ct::random_raster(rng, 6, 5);
  EXPECT_EQ(convolve2d(rgb, Kernel3x3::identity()), rgb);
}

TEST(Convolve, BoxPreservesConstant) {
  const GrayImage img(7, 7, 100.0);
  const GrayImage out = convolve2d(img, Kernel3x3::box());
  for (double v : out.values()) EXPECT_NEAR(v, 100.0, 1e-12);
  const RasterImage rgb(5, 4, Rgb{100, 7, 250});
  EXPECT_EQ(convolve2d(rgb, Kernel3x3::box()), rgb);
}

TEST(Convolve, IsTrueConvolutionNotCorrelation) {
  // h(0, -1) = 1 means y(i, j) = x(i, j + 1): a left shift.
  Kernel3x3::Weights w{};
  w[3] = 1.0;
  const GrayImage x(3, 1, std::vector<double>{1.0, 2.0, 3.0});
  const GrayImage y = convolve2d(x, Kernel3x3(w));
  EXPECT_EQ(y.at(0, 0), 2.0);
  EXPECT_EQ(y.at(1, 0), 3.0);
  EXPECT_EQ(y.at(2, 0), 3.0);  // replicated border
}

TEST(Convolve, RandomMatchesDoubleSumOracle) {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> kd(-1.0, 1.0);
  const GrayImage img = ct::random_gray(rng, 5, 5);
  Kernel3x3::Weights w;
  for (double& v : w) v = kd(rng);
  const GrayImage out = convolve2d(img, Kernel3x3(w));
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      EXPECT_EQ(out.at(j, i), ct::oracle_convolve(img, w, i, j));
    }
  }
}

TEST(Convolve, Linear) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> kd(-2.0, 2.0);
  for (int t = 0; t < 20; ++t) {
    const GrayImage x = ct::random_gray(rng, 8, 8);
    const GrayImage y = ct::random_gray(rng, 8, 8);
    Kernel3x3::Weights w;
    for (double& v : w) v = kd(rng);
    const Kernel3x3 h(w);
    const double a = kd(rng);
    const double b = kd(rng);
    GrayImage mix = x;
    for (std::size_t i = 0; i < mix.values().size(); ++i) {
      mix.values()[i] = a * x.values()[i] + b * y.values()[i];
    }
    const GrayImage lhs = convolve2d(mix, h);
    const GrayImage cx = convolve2d(x, h);
    const GrayImage cy = convolve2d(y, h);
    for (std::size_t i = 0; i < lhs.values().size(); ++i) {
      EXPECT_NEAR(lhs.values()[i], a * cx.values()[i] + b * cy.values()[i], 1e-9);
    }
  }
}

TEST(Kernel, ParseNineWeights) {
  const Kernel3x3 k = Kernel3x3::parse("0,0,0, 0,1,0 ,0,0,0");
  EXPECT_EQ(k, Kernel3x3::identity());
  const Kernel3x3 g = Kernel3x3::parse("1,2,1,2,4,2,1,2,1");
  EXPECT_EQ(g.at(0, 0), 4.0);
  EXPECT_EQ(g.at(-1, 1), 1.0);
  EXPECT_EQ(Kernel3x3::parse(g.to_string()), g);

  EXPECT_THROW(Kernel3x3::parse("1,2,3"), Error);
  EXPECT_THROW(Kernel3x3::parse("1,2,3,4,5,6,7,8,9,10"), Error);
  EXPECT_THROW(Kernel3x3::parse("1,2,3,4,x,6,7,8,9"), Error);
  EXPECT_THROW(Kernel3x3::parse("1,2,3,4,5,6,7,8,nan"), Error);
}

TEST(Parallel, ThreadCountDoesNotChangeResults) {
  std::mt19937 rng(77);
  const GrayImage img = ct::random_gray(rng, 97, 83);
  set_max_threads(1);
  const GrayImage up1 = lanczos_upscale(img, 2);
  const GrayImage cv1 = convolve2d(up1, Kernel3x3::box());
  set_max_threads(5);
  const GrayImage up5 = lanczos_upscale(img, 2);
  const GrayImage cv5 = convolve2d(up5, Kernel3x3::box());
  set_max_threads(0);
  EXPECT_EQ(up1, up5);
  EXPECT_EQ(cv1, cv5);
}

}  // namespace
