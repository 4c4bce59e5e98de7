"""
Telegram alerts for search results
"""
import logging
from typing import Dict

import requests

import config
from utils import format_profile, get_timestamp


class TelegramNotifier:
    """Sends search alerts through the Telegram Bot API"""

    def __init__(self, bot_token: str = None, chat_id: str = None):
        self.bot_token = bot_token or config.TELEGRAM_BOT_TOKEN
        self.chat_id = chat_id or config.TELEGRAM_CHAT_ID
        self.base_url = f"https://api.telegram.org/bot{self.bot_token}"

        if not self.bot_token or not self.chat_id:
            logging.warning("Telegram bot token or chat ID not configured. Notifications will be logged only.")

    @property
    def configured(self) -> bool:
        return bool(self.bot_token and self.chat_id)

    def send_nonkoszul_alert(self, record: Dict) -> bool:
        """Alert for one non-Koszul graph found by a search"""
        try:
            return self._send_message(self.format_nonkoszul_message(record))
        except Exception as e:
            logging.error(f"Error sending non-Koszul alert: {e}")
            return False

    def send_search_summary(self, report: Dict) -> bool:
        try:
            return self._send_message(self.format_summary_message(report))
        except Exception as e:
            logging.error(f"Error sending search summary: {e}")
            return False

    def format_nonkoszul_message(self, record: Dict) -> str:
        graph = record["graph"]
        verdict = record.get("verdict", {})
        message = "🔴 Non-Koszul graph found\n\n"
        message += f"Profile: {format_profile(graph['layers'])}\n"
        message += f"Vertices: {sum(graph['layers'])}, edges: {len(graph['edges'])}\n"
        message += f"Key: {record['key']}\n"
        if "run" in verdict:
            message += f"Failing run: {verdict['run']} ({verdict.get('identity', '?')})\n"
        if verdict.get("numeric_first_fail") is not None:
            message += f"Numerical test fails in degree {verdict['numeric_first_fail']}\n"
        message += f"\n⏰ {get_timestamp()}"
        return message

    def format_summary_message(self, report: Dict) -> str:
        rows = report.get("rows", [])
        message = "📊 Search summary\n\n"
        message += f"Max vertices: {report.get('max_vertices')}, mode: {report.get('mode')}\n"
        message += f"Profiles: {len(rows)}\n"
        message += f"Uniform graphs: {sum(r['uniform'] for r in rows)}\n"
        message += f"Non-Koszul: {sum(r['non_koszul'] for r in rows)}\n"
        message += f"\n⏰ {get_timestamp()}"
        return message

    def _send_message(self, message: str) -> bool:
        if not self.configured:
            logging.info(f"Telegram not configured. Message would be:\n{message}")
            return True

        try:
            response = requests.post(
                f"{self.base_url}/sendMessage",
                json={'chat_id': self.chat_id, 'text': message, 'disable_web_page_preview': True},
                timeout=config.REQUEST_TIMEOUT,
            )
            response.raise_for_status()
            result = response.json()
            if result.get('ok'):
                logging.info("Telegram message sent successfully")
                return True
            logging.error(f"Telegram API error: {result.get('description', 'Unknown error')}")
            return False
        except Exception as e:
            logging.error(f"Error sending Telegram message: {e}")
            return False
