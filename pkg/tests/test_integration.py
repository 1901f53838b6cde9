import os
import sys
import unittest

from ringlab.config import default_settings
from ringlab.suite import CLAIMS, CONTROLS, run_suite


COMPLETE_CHECK = (
    'complete-check' in sys.argv
    or os.environ.get('RINGLAB_COMPLETE_CHECK') == '1'
)


@unittest.skipUnless(COMPLETE_CHECK, 'No integration test required')
class IntegrationFullTest(unittest.TestCase):
    """
    Runs every registered claim and control with the default budgets.
    This takes several minutes.
    """
    @classmethod
    def setUpClass(cls):
        settings = default_settings().with_overrides(deterministic=True)
        cls.report = run_suite(settings=settings)
        cls.controls = run_suite(controls=True, settings=settings)

    def test_all_claims_run(self):
        self.assertEqual(
            [o.anchor for o in self.report.outcomes],
            [c.anchor for c in CLAIMS]
        )

    def test_suite_passes(self):
        failed = [
            '{}: {}'.format(o.anchor, o.error or o.status)
            for o in self.report.outcomes if not o.passed
        ]
        self.assertEqual(failed, [])
        self.assertTrue(self.report.passed)

    def test_no_errors(self):
        self.assertEqual(self.report.counts()['error'], 0)

    def test_controls_are_rejected(self):
        self.assertEqual(
            [o.status for o in self.controls.outcomes],
            ['fail'] * len(CONTROLS)
        )
        self.assertTrue(self.controls.passed)


if __name__ == "__main__":
    unittest.main(argv=[a for a in sys.argv if a != 'complete-check'])
