"""
Quick test script to verify server endpoints
Run this against a local or deployed server
"""

import json
import sys

import httpx

BASE_URL = sys.argv[1] if len(sys.argv) > 1 else "http://localhost:8000"


def test_endpoint(url, method="GET", payload=None):
    """Hit an endpoint and print the result"""
    try:
        if method == "GET":
            response = httpx.get(url, timeout=120)
        else:
            response = httpx.post(url, json=payload, timeout=600)

        print(f"\n{'='*60}")
        print(f"Testing: {method} {url}")
        print(f"Status: {response.status_code}")
        print(f"Response: {json.dumps(response.json(), indent=2, ensure_ascii=False)[:2000]}")
        return response.status_code == 200
    except Exception as e:
        print(f"\n{'='*60}")
        print(f"Error testing {url}: {e}")
        return False


if __name__ == "__main__":
    print("Testing hlorentz endpoints...")

    results = [
        test_endpoint(f"{BASE_URL}/"),
        test_endpoint(f"{BASE_URL}/health"),
        test_endpoint(f"{BASE_URL}/api/suites"),
        test_endpoint(f"{BASE_URL}/api/matrices/rh"),
        test_endpoint(f"{BASE_URL}/api/matrices/gamma-alpha?deformation=2"),
        test_endpoint(f"{BASE_URL}/api/checks/ybe", method="POST", payload={"deformations": [2]}),
        test_endpoint(f"{BASE_URL}/api/checks/exchange-appendix", method="POST", payload={"deformations": [1, 2]}),
    ]

    print("\n" + "="*60)
    print(f"Testing complete: {sum(results)}/{len(results)} endpoints OK")
