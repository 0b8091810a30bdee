#include <math.h>
#include <stdio.h>
#include "modcont.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (line %d)\n", #cond, __LINE__); return 1; } } while (0)

int main(void) {
    double v = 0.0;
    CHECK(mc_cantor_eval(0.25, 64, &v) == MC_STATUS_OK);
    CHECK(fabs(v - 1.0 / 3.0) < 1e-15);

    McFunction *g = NULL;
    CHECK(mc_function_new(MC_FUNCTION_KIND_G, &g) == MC_STATUS_OK);
    CHECK(mc_function_eval(g, 7.0, &v) == MC_STATUS_OK && v == 7.0);
    CHECK(mc_function_eval(g, 8.0, &v) == MC_STATUS_DOMAIN);
    char msg[256];
    CHECK(mc_last_error_message(msg, sizeof msg) > 0);

    McModulusTable *t = NULL;
    CHECK(mc_modulus_grid(g, 1401, &t) == MC_STATUS_OK);
    CHECK(mc_modulus_len(t) == 1401);
    CHECK(mc_modulus_value_at(t, 7.0, &v) == MC_STATUS_OK && v == 7.0);
    mc_modulus_free(t);
    mc_function_free(g);

    CHECK(mc_omega_g_closed(7.0, &v) == MC_STATUS_OK && v == 7.0);
    puts("ok");
    return 0;
}
